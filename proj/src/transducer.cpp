#include "bimorph/transducer.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "bimorph/bimorphism.hpp"
#include "bimorph/error.hpp"
#include "bimorph/hom.hpp"

namespace bimorph {

namespace {

bool match(const Tree& pattern, const Tree& s, std::vector<std::optional<Tree>>& bound)
{
    if (pattern.is_variable()) {
        auto& slot = bound[pattern.var_index() - 1];
        if (slot)
            return *slot == s;
        slot = s;
        return true;
    }
    if (pattern.kind() != s.kind() || pattern.name() != s.name() || pattern.rank() != s.rank())
        return false;
    for (std::size_t i = 0; i < pattern.rank(); ++i)
        if (!match(pattern.child(i), s.child(i), bound))
            return false;
    return true;
}

bool matches(const Tree& pattern, const Tree& s)
{
    std::vector<std::optional<Tree>> bound(pattern.max_variable());
    return match(pattern, s, bound);
}

Tree plain_pattern(Name symbol, unsigned k, bool leaf)
{
    if (leaf)
        return Tree::leaf(symbol);
    std::vector<Tree> vars;
    for (unsigned i = 1; i <= k; ++i)
        vars.push_back(Tree::variable(i));
    return Tree::node(symbol, std::move(vars));
}

} // namespace

Lookahead Lookahead::finite(std::vector<Tree> patterns)
{
    Lookahead la;
    la.kind = LookaheadKind::finite;
    la.patterns = std::move(patterns);
    return la;
}

Lookahead Lookahead::regular(std::shared_ptr<const Fta> automaton, std::vector<State> accepting)
{
    Lookahead la;
    la.kind = LookaheadKind::regular;
    la.automaton = std::move(automaton);
    la.accepting = std::move(accepting);
    return la;
}

bool Lookahead::admits(const Tree& s) const
{
    switch (kind) {
    case LookaheadKind::none:
        return true;
    case LookaheadKind::finite:
        return std::any_of(patterns.begin(), patterns.end(), [&](const Tree& p) { return matches(p, s); });
    case LookaheadKind::regular: {
        auto states = automaton->run(s);
        return std::any_of(accepting.begin(), accepting.end(), [&](State q) { return states[q] != 0; });
    }
    }
    return false;
}

bool Lookahead::is_trivial() const
{
    if (kind == LookaheadKind::none)
        return true;
    if (kind == LookaheadKind::finite)
        return std::any_of(patterns.begin(), patterns.end(), [](const Tree& p) { return p.is_variable(); });
    return false;
}

namespace {

void add_lookahead_pattern(Fta& out, const Tree& p, State at, State any)
{
    std::vector<State> kids;
    for (const Tree& c : p.children()) {
        if (c.is_variable()) {
            kids.push_back(any);
            continue;
        }
        State s = out.add_state();
        add_lookahead_pattern(out, c, s, any);
        kids.push_back(s);
    }
    out.add_rule(at, p.name(), std::move(kids));
}

} // namespace

Lookahead Lookahead::as_regular(const Signature& sig) const
{
    if (kind != LookaheadKind::finite)
        return *this;
    Fta universal = universal_fta(sig);
    auto out = std::make_shared<Fta>(universal);
    out->set_final(0, false);
    std::vector<State> accepting;
    for (const Tree& p : patterns) {
        auto counts = variable_counts(p, p.max_variable());
        if (std::any_of(counts.begin() + 1, counts.end(), [](std::size_t c) { return c > 1; }))
            throw Error(ErrorKind::unsupported_shape, "non-linear look-ahead pattern " + p.str());
        if (p.is_variable()) {
            accepting.push_back(0);
            continue;
        }
        State root = out->add_state("la" + std::to_string(out->state_count()));
        add_lookahead_pattern(*out, p, root, 0);
        accepting.push_back(root);
    }
    std::sort(accepting.begin(), accepting.end());
    accepting.erase(std::unique(accepting.begin(), accepting.end()), accepting.end());
    return regular(std::move(out), std::move(accepting));
}

std::string TransducerFlags::str() const
{
    std::string out;
    auto add = [&out](bool flag, const char* name) {
        if (!flag)
            return;
        if (!out.empty())
            out += ' ';
        out += name;
    };
    add(linear, "linear");
    add(nondeleting, "nondeleting");
    add(finite_state_relabeling, "finite_state_relabeling");
    add(relabeling, "relabeling");
    add(fta_shaped, "fta_shaped");
    return out;
}

Transducer::Transducer(Signature input, Signature output) : input_(std::move(input)), output_(std::move(output))
{
    input_.validate();
    output_.validate();
}

State Transducer::add_state(std::string label)
{
    if (label.empty())
        label = "q" + std::to_string(labels_.size());
    while (find_state(label) >= 0)
        label += '\'';
    labels_.push_back(std::move(label));
    final_.push_back(0);
    return static_cast<State>(labels_.size() - 1);
}

long Transducer::find_state(std::string_view label) const
{
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == label)
            return static_cast<long>(i);
    return -1;
}

void Transducer::set_final(State q, bool final)
{
    if (q >= labels_.size())
        throw Error(ErrorKind::parse_error, "no state " + std::to_string(q));
    final_[q] = final ? 1 : 0;
}

std::vector<State> Transducer::final_states() const
{
    std::vector<State> out;
    for (State q = 0; q < final_.size(); ++q)
        if (final_[q])
            out.push_back(q);
    return out;
}

void Transducer::add_rule(TdRule rule)
{
    if (rule.state >= labels_.size())
        throw Error(ErrorKind::parse_error, "rule for an undeclared state");
    input_.check(rule.pattern);
    unsigned nvars = rule.pattern.max_variable();
    auto counts = variable_counts(rule.pattern, nvars);
    for (unsigned i = 1; i <= nvars; ++i)
        if (counts[i] > 1)
            throw Error(ErrorKind::unsupported_shape, "left-hand side " + rule.pattern.str() + " is not linear");
    for (const StateCall& c : rule.calls) {
        if (c.state >= labels_.size())
            throw Error(ErrorKind::parse_error, "call to an undeclared state");
        if (c.var == 0 || c.var > nvars || counts[c.var] == 0)
            throw Error(ErrorKind::unbound_variable, "call on x" + std::to_string(c.var) + " which is not in "
                                                         + rule.pattern.str());
    }
    output_.check(rule.rhs);
    auto uses = variable_counts(rule.rhs, static_cast<unsigned>(rule.calls.size()));
    if (rule.rhs.max_variable() > rule.calls.size())
        throw Error(ErrorKind::unbound_variable, "right-hand side refers to a missing call");
    for (std::size_t j = 1; j <= rule.calls.size(); ++j)
        if (uses[j] != 1)
            throw Error(ErrorKind::parse_error, "each call must occur exactly once in the right-hand side");
    if (rule.lookahead.kind == LookaheadKind::finite)
        for (const Tree& p : rule.lookahead.patterns)
            input_.check(p);
    if (rule.lookahead.kind == LookaheadKind::regular && !rule.lookahead.automaton)
        throw Error(ErrorKind::parse_error, "regular look-ahead without an automaton");
    rules_.push_back(std::move(rule));
}

std::string Transducer::rule_str(const TdRule& r) const
{
    std::vector<Tree> calls;
    for (const StateCall& c : r.calls)
        calls.push_back(Tree::node(Name(labels_[c.state]), {Tree::variable(c.var)}));
    return labels_[r.state] + "(" + r.pattern.str() + ") -> " + substitute(r.rhs, calls).str();
}

namespace {

struct KeyHash {
    std::size_t operator()(const std::pair<State, const void*>& k) const noexcept
    {
        return std::hash<const void*>{}(k.second) * 31 + k.first;
    }
};

class Deriver {
public:
    Deriver(const Transducer& m, std::size_t bound) : m_(m), bound_(bound), by_state_(m.state_count())
    {
        for (std::size_t i = 0; i < m.rules().size(); ++i)
            by_state_[m.rules()[i].state].push_back(i);
    }

    const TreeSet& outputs(State q, const Tree& s)
    {
        auto key = std::make_pair(q, s.identity());
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;
        if (++depth_ > bound_)
            throw Error(ErrorKind::nontermination_suspected,
                        "derivation exceeded " + std::to_string(bound_) + " nested steps");
        TreeSet result;
        for (std::size_t r : by_state_[q]) {
            const TdRule& rule = m_.rules()[r];
            std::vector<std::optional<Tree>> bound(rule.pattern.max_variable());
            if (!match(rule.pattern, s, bound) || !rule.lookahead.admits(s))
                continue;
            std::vector<std::vector<Tree>> pools;
            bool empty = false;
            for (const StateCall& c : rule.calls) {
                const TreeSet& sub = outputs(c.state, *bound[c.var - 1]);
                pools.emplace_back(sub.begin(), sub.end());
                empty = empty || sub.empty();
            }
            if (empty)
                continue;
            std::vector<std::size_t> idx(pools.size(), 0);
            for (bool more = true; more;) {
                std::vector<Tree> args;
                for (std::size_t j = 0; j < pools.size(); ++j)
                    args.push_back(pools[j][idx[j]]);
                result.insert(substitute(rule.rhs, args));
                more = false;
                for (std::size_t j = pools.size(); j-- > 0;) {
                    if (++idx[j] < pools[j].size()) {
                        more = true;
                        break;
                    }
                    idx[j] = 0;
                }
            }
        }
        --depth_;
        return memo_.emplace(key, std::move(result)).first->second;
    }

private:
    const Transducer& m_;
    std::size_t bound_;
    std::size_t depth_ = 0;
    std::vector<std::vector<std::size_t>> by_state_;
    std::unordered_map<std::pair<State, const void*>, TreeSet, KeyHash> memo_;
};

} // namespace

TreeSet derive(const Transducer& m, const Tree& s, std::size_t step_bound)
{
    if (!s.is_ground())
        throw Error(ErrorKind::alphabet_mismatch, "transducers read ground trees, got " + s.str());
    m.input().check(s);
    Deriver d(m, step_bound);
    TreeSet out;
    for (State q : m.final_states()) {
        const TreeSet& o = d.outputs(q, s);
        out.insert(o.begin(), o.end());
    }
    return out;
}

namespace {

// q(f(x1..xk)) -> g(q1(x1), ..., qk(xk)) with no real look-ahead.
bool relabeling_rule(const TdRule& r)
{
    if (!r.lookahead.is_trivial() || r.pattern.is_variable())
        return false;
    const std::size_t k = r.pattern.rank();
    if (r.rhs.is_variable() || r.rhs.rank() != k || r.calls.size() != k || r.pattern.is_leaf() != r.rhs.is_leaf())
        return false;
    for (std::size_t i = 0; i < k; ++i) {
        const Tree& p = r.pattern.child(i);
        const Tree& o = r.rhs.child(i);
        if (!p.is_variable() || p.var_index() != i + 1 || !o.is_variable())
            return false;
        if (r.calls[o.var_index() - 1].var != i + 1 || o.var_index() != i + 1)
            return false;
    }
    return true;
}

} // namespace

TransducerFlags classify(const Transducer& m)
{
    TransducerFlags f;
    f.linear = f.nondeleting = f.finite_state_relabeling = f.fta_shaped = true;
    for (const TdRule& r : m.rules()) {
        unsigned n = r.pattern.max_variable();
        std::vector<std::size_t> called(n + 1, 0);
        for (const StateCall& c : r.calls)
            ++called[c.var];
        auto present = variable_counts(r.pattern, n);
        for (unsigned i = 1; i <= n; ++i) {
            if (!present[i])
                continue;
            f.linear = f.linear && called[i] <= 1;
            f.nondeleting = f.nondeleting && called[i] >= 1;
        }
        bool rel = relabeling_rule(r);
        f.finite_state_relabeling = f.finite_state_relabeling && rel;
        f.fta_shaped = f.fta_shaped && rel && r.rhs.name() == r.pattern.name();
    }
    f.fta_shaped = f.fta_shaped && f.finite_state_relabeling;
    f.relabeling = f.finite_state_relabeling && m.state_count() == 1;
    return f;
}

Transducer compile_bimorphism(const Bimorphism& b)
{
    b.validate();
    if (!b.quasi_alphabetic())
        throw Error(ErrorKind::class_mismatch, "compilation needs a quasi-alphabetic bimorphism");
    Transducer m(b.phi.target(), b.psi.target());
    for (State q = 0; q < b.center.state_count(); ++q) {
        m.add_state(b.center.state_label(q));
        m.set_final(q, b.center.is_final(q));
    }
    const Tree any = Tree::variable(1);
    for (const FtaRule& r : b.center.rules()) {
        const Tree& t = b.phi.image_of(r.symbol);
        const Tree& u = b.psi.image_of(r.symbol);
        if (b.center.signature().leaves.contains(r.symbol)) {
            m.add_rule({r.target, t, u, {}, Lookahead::finite({any})});
            continue;
        }
        std::vector<StateCall> calls(r.children.size());
        for (std::size_t j = 0; j < t.rank(); ++j)
            if (t.child(j).is_variable())
                calls[t.child(j).var_index() - 1] = {0, static_cast<unsigned>(j + 1)};
        for (std::size_t i = 0; i < r.children.size(); ++i)
            calls[i].state = r.children[i];
        m.add_rule({r.target, plain_pattern(t.name(), static_cast<unsigned>(t.rank()), false), u, std::move(calls),
                    Lookahead::finite({t})});
    }
    return m;
}

Transducer fta_as_transducer(const Fta& a)
{
    Transducer m(a.signature(), a.signature());
    for (State q = 0; q < a.state_count(); ++q) {
        m.add_state(a.state_label(q));
        m.set_final(q, a.is_final(q));
    }
    for (const FtaRule& r : a.rules()) {
        bool leaf = a.signature().leaves.contains(r.symbol);
        const unsigned k = static_cast<unsigned>(r.children.size());
        std::vector<StateCall> calls;
        for (unsigned i = 0; i < k; ++i)
            calls.push_back({r.children[i], i + 1});
        Tree p = plain_pattern(r.symbol, k, leaf);
        m.add_rule({r.target, p, p, std::move(calls), {}});
    }
    return m;
}

Fta transducer_as_fta(const Transducer& m)
{
    if (!classify(m).fta_shaped)
        throw Error(ErrorKind::class_mismatch, "transducer is not an fta");
    Fta a(m.input());
    for (State q = 0; q < m.state_count(); ++q) {
        a.add_state(m.state_label(q));
        a.set_final(q, m.is_final(q));
    }
    for (const TdRule& r : m.rules()) {
        std::vector<State> kids;
        for (const StateCall& c : r.calls)
            kids.push_back(c.state);
        a.add_rule(r.state, r.pattern.name(), std::move(kids));
    }
    return a;
}

} // namespace bimorph
