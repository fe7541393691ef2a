#include "bimorph/fta.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

#include "bimorph/error.hpp"

namespace bimorph {

namespace {

const std::vector<std::size_t> no_rules;

} // namespace

Fta::Fta(Signature sig) : sig_(std::move(sig))
{
    sig_.validate();
}

State Fta::add_state(std::string label)
{
    if (label.empty())
        label = "q" + std::to_string(labels_.size());
    while (find_state(label) >= 0)
        label += '\'';
    index_.emplace(label, static_cast<State>(labels_.size()));
    labels_.push_back(std::move(label));
    final_.push_back(0);
    return static_cast<State>(labels_.size() - 1);
}

long Fta::find_state(std::string_view label) const
{
    auto it = index_.find(std::string(label));
    return it == index_.end() ? -1 : static_cast<long>(it->second);
}

void Fta::set_final(State q, bool final)
{
    if (q >= labels_.size())
        throw Error(ErrorKind::parse_error, "no state " + std::to_string(q));
    final_[q] = final ? 1 : 0;
}

std::vector<State> Fta::final_states() const
{
    std::vector<State> out;
    for (State q = 0; q < final_.size(); ++q)
        if (final_[q])
            out.push_back(q);
    return out;
}

void Fta::add_rule(State target, Name symbol, std::vector<State> children)
{
    if (sig_.leaves.contains(symbol)) {
        if (!children.empty())
            throw Error(ErrorKind::alphabet_mismatch, "leaf '" + std::string(symbol.str()) + "' given children");
    } else if (!sig_.ranked.contains(symbol)) {
        throw Error(ErrorKind::alphabet_mismatch, "rule symbol '" + std::string(symbol.str()) + "' not in alphabet");
    } else if (sig_.ranked.rank(symbol) != children.size()) {
        throw Error(ErrorKind::alphabet_mismatch, "rule for '" + std::string(symbol.str()) + "' has "
                                                      + std::to_string(children.size()) + " children, rank is "
                                                      + std::to_string(sig_.ranked.rank(symbol)));
    }
    if (target >= labels_.size() || std::any_of(children.begin(), children.end(), [&](State c) { return c >= labels_.size(); }))
        throw Error(ErrorKind::parse_error, "rule refers to an undeclared state");
    FtaRule rule{target, symbol, std::move(children)};
    if (!rule_set_.insert(rule).second)
        return;
    by_symbol_[symbol].push_back(rules_.size());
    rules_.push_back(std::move(rule));
}

const std::vector<std::size_t>& Fta::rules_for(Name symbol) const
{
    auto it = by_symbol_.find(symbol);
    return it == by_symbol_.end() ? no_rules : it->second;
}

std::vector<char> Fta::run_unchecked(const Tree& t) const
{
    std::vector<std::vector<char>> kids;
    kids.reserve(t.rank());
    for (const Tree& c : t.children())
        kids.push_back(run_unchecked(c));
    std::vector<char> out(labels_.size(), 0);
    for (std::size_t r : rules_for(t.name())) {
        const FtaRule& rule = rules_[r];
        if (rule.children.size() != t.rank())
            continue;
        bool ok = true;
        for (std::size_t i = 0; ok && i < rule.children.size(); ++i)
            ok = kids[i][rule.children[i]] != 0;
        if (ok)
            out[rule.target] = 1;
    }
    return out;
}

std::vector<char> Fta::run(const Tree& t) const
{
    if (!t.is_ground())
        throw Error(ErrorKind::alphabet_mismatch, "automata read ground trees, got " + t.str());
    sig_.check(t);
    return run_unchecked(t);
}

bool Fta::accepts(const Tree& t) const
{
    auto states = run(t);
    for (State q = 0; q < states.size(); ++q)
        if (states[q] && final_[q])
            return true;
    return false;
}

bool Fta::accepts_from(State q, const Tree& t) const
{
    return run(t).at(q) != 0;
}

std::string Fta::str() const
{
    std::ostringstream out;
    out << "states:";
    for (const auto& l : labels_)
        out << ' ' << l;
    out << "\nfinal:";
    for (State q : final_states())
        out << ' ' << labels_[q];
    out << '\n';
    std::vector<std::string> lines;
    for (const FtaRule& r : rules_) {
        std::string line = labels_[r.target] + " -> " + std::string(r.symbol.str());
        if (!r.children.empty()) {
            line += '(';
            for (std::size_t i = 0; i < r.children.size(); ++i) {
                if (i)
                    line += ',';
                line += labels_[r.children[i]];
            }
            line += ')';
        }
        lines.push_back(std::move(line));
    }
    std::sort(lines.begin(), lines.end());
    for (const auto& l : lines)
        out << l << '\n';
    return out.str();
}

std::vector<char> productive_states(const Fta& a)
{
    std::vector<char> prod(a.state_count(), 0);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const FtaRule& r : a.rules()) {
            if (prod[r.target])
                continue;
            if (std::all_of(r.children.begin(), r.children.end(), [&](State c) { return prod[c] != 0; })) {
                prod[r.target] = 1;
                changed = true;
            }
        }
    }
    return prod;
}

bool is_empty(const Fta& a)
{
    auto prod = productive_states(a);
    for (State q : a.final_states())
        if (prod[q])
            return false;
    return true;
}

Fta trim(const Fta& a)
{
    auto prod = productive_states(a);
    auto usable = [&](const FtaRule& r) {
        return prod[r.target] && std::all_of(r.children.begin(), r.children.end(), [&](State c) { return prod[c] != 0; });
    };
    std::vector<char> reach(a.state_count(), 0);
    std::vector<State> stack;
    for (State q : a.final_states())
        if (prod[q]) {
            reach[q] = 1;
            stack.push_back(q);
        }
    std::vector<std::vector<std::size_t>> by_target(a.state_count());
    for (std::size_t i = 0; i < a.rules().size(); ++i)
        by_target[a.rules()[i].target].push_back(i);
    while (!stack.empty()) {
        State q = stack.back();
        stack.pop_back();
        for (std::size_t i : by_target[q]) {
            const FtaRule& r = a.rules()[i];
            if (!usable(r))
                continue;
            for (State c : r.children)
                if (!reach[c]) {
                    reach[c] = 1;
                    stack.push_back(c);
                }
        }
    }
    Fta out(a.signature());
    std::vector<State> map(a.state_count(), 0);
    for (State q = 0; q < a.state_count(); ++q)
        if (reach[q]) {
            map[q] = out.add_state(a.state_label(q));
            out.set_final(map[q], a.is_final(q));
        }
    for (const FtaRule& r : a.rules()) {
        if (!reach[r.target] || !usable(r))
            continue;
        std::vector<State> kids;
        for (State c : r.children)
            kids.push_back(map[c]);
        out.add_rule(map[r.target], r.symbol, std::move(kids));
    }
    return out;
}

Fta language_union(const Fta& a, const Fta& b)
{
    Fta out(a.signature().merged(b.signature()));
    std::vector<State> ma, mb;
    for (State q = 0; q < a.state_count(); ++q) {
        ma.push_back(out.add_state(a.state_label(q)));
        out.set_final(ma.back(), a.is_final(q));
    }
    for (State q = 0; q < b.state_count(); ++q) {
        mb.push_back(out.add_state(b.state_label(q)));
        out.set_final(mb.back(), b.is_final(q));
    }
    auto copy = [&out](const Fta& src, const std::vector<State>& m) {
        for (const FtaRule& r : src.rules()) {
            std::vector<State> kids;
            for (State c : r.children)
                kids.push_back(m[c]);
            out.add_rule(m[r.target], r.symbol, std::move(kids));
        }
    };
    copy(a, ma);
    copy(b, mb);
    return out;
}

Fta language_intersection(const Fta& a, const Fta& b)
{
    Signature sig = a.signature().merged(b.signature());
    std::map<std::pair<State, State>, State> pairs;
    Fta out(sig);
    struct Pending {
        State target;
        Name symbol;
        std::vector<State> children;
    };
    std::vector<Pending> found;
    std::set<std::tuple<std::size_t, std::size_t>> done;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < a.rules().size(); ++i) {
            const FtaRule& ra = a.rules()[i];
            for (std::size_t j : b.rules_for(ra.symbol)) {
                const FtaRule& rb = b.rules()[j];
                if (rb.children.size() != ra.children.size() || done.count({i, j}))
                    continue;
                std::vector<State> kids;
                bool ok = true;
                for (std::size_t c = 0; ok && c < ra.children.size(); ++c) {
                    auto it = pairs.find({ra.children[c], rb.children[c]});
                    ok = it != pairs.end();
                    if (ok)
                        kids.push_back(it->second);
                }
                if (!ok)
                    continue;
                done.insert({i, j});
                auto key = std::make_pair(ra.target, rb.target);
                auto it = pairs.find(key);
                if (it == pairs.end()) {
                    State q = out.add_state("(" + a.state_label(ra.target) + "," + b.state_label(rb.target) + ")");
                    out.set_final(q, a.is_final(ra.target) && b.is_final(rb.target));
                    it = pairs.emplace(key, q).first;
                }
                found.push_back({it->second, ra.symbol, std::move(kids)});
                changed = true;
            }
        }
    }
    for (auto& p : found)
        out.add_rule(p.target, p.symbol, std::move(p.children));
    return trim(out);
}

namespace {

State add_subtree_states(Fta& out, const Tree& t, std::map<Tree, State>& memo)
{
    if (auto it = memo.find(t); it != memo.end())
        return it->second;
    std::vector<State> kids;
    for (const Tree& c : t.children())
        kids.push_back(add_subtree_states(out, c, memo));
    State q = out.add_state("s" + std::to_string(out.state_count()));
    out.add_rule(q, t.name(), std::move(kids));
    memo.emplace(t, q);
    return q;
}

} // namespace

Fta singleton_fta(const Tree& t, const Signature& sig)
{
    return finite_language_fta(TreeSet{t}, sig);
}

Fta finite_language_fta(const TreeSet& trees, const Signature& sig)
{
    Fta out(sig);
    std::map<Tree, State> memo;
    for (const Tree& t : trees) {
        if (!t.is_ground())
            throw Error(ErrorKind::alphabet_mismatch, "automata read ground trees, got " + t.str());
        sig.check(t);
        out.set_final(add_subtree_states(out, t, memo));
    }
    return out;
}

Fta universal_fta(const Signature& sig)
{
    Fta out(sig);
    State q = out.add_state("all");
    out.set_final(q);
    for (Name v : sig.leaves.names())
        out.add_rule(q, v);
    for (const auto& [f, k] : sig.ranked.symbols())
        out.add_rule(q, f, std::vector<State>(k, q));
    return out;
}

} // namespace bimorph
