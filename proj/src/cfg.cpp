#include "bimorph/cfg.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "bimorph/error.hpp"
#include "bimorph/term_syntax.hpp"

namespace bimorph {

const Production& Cfg::add(Name lhs, std::vector<Name> rhs)
{
    std::size_t n = 1;
    for (const Production& p : productions_)
        n += p.lhs == lhs ? 1 : 0;
    productions_.push_back({Name("@" + std::string(lhs.str()) + "." + std::to_string(n)), lhs, std::move(rhs)});
    return productions_.back();
}

std::set<Name> Cfg::nonterminals() const
{
    std::set<Name> out;
    for (const Production& p : productions_)
        out.insert(p.lhs);
    return out;
}

std::set<Name> Cfg::terminals() const
{
    auto nts = nonterminals();
    std::set<Name> out;
    for (const Production& p : productions_)
        for (Name x : p.rhs)
            if (!nts.count(x))
                out.insert(x);
    return out;
}

bool Cfg::is_nonterminal(Name x) const
{
    return std::any_of(productions_.begin(), productions_.end(), [x](const Production& p) { return p.lhs == x; });
}

void Cfg::validate() const
{
    if (start_.empty())
        throw Error(ErrorKind::grammar_invalid, "no start symbol");
    if (!is_nonterminal(start_))
        throw Error(ErrorKind::grammar_invalid, "start symbol '" + std::string(start_.str()) + "' has no productions");
    for (const Production& p : productions_) {
        for (Name x : p.rhs) {
            if (x.empty() || x.str() == "~" || is_variable_name(x.str()) || x.str().front() == '@'
                || scan_name(x.str(), 0) != x.str().size())
                throw Error(ErrorKind::grammar_invalid, "bad grammar symbol '" + std::string(x.str()) + "'");
        }
        if (p.lhs.str().front() == '@' || is_variable_name(p.lhs.str()) || scan_name(p.lhs.str(), 0) != p.lhs.str().size())
            throw Error(ErrorKind::grammar_invalid, "bad nonterminal '" + std::string(p.lhs.str()) + "'");
    }
}

Cfg Cfg::parse(std::string_view text)
{
    Cfg g;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view l = trim(line);
        if (l.empty() || l.front() == '#')
            continue;
        if (l.starts_with("start:")) {
            g.start_ = Name(trim(l.substr(6)));
            continue;
        }
        auto arrow = l.find("->");
        if (arrow == std::string_view::npos)
            throw Error(ErrorKind::grammar_invalid, "line " + std::to_string(lineno) + ": expected 'A -> alpha'");
        std::string_view lhs = trim(l.substr(0, arrow));
        if (lhs.empty() || lhs.find_first_of(" \t") != std::string_view::npos)
            throw Error(ErrorKind::grammar_invalid, "line " + std::to_string(lineno) + ": bad left-hand side");
        std::string_view rest = l.substr(arrow + 2);
        std::size_t start = 0;
        for (;;) {
            std::size_t bar = rest.find('|', start);
            std::string_view alt = trim(rest.substr(start, bar == std::string_view::npos ? rest.npos : bar - start));
            Word rhs = parse_word(alt);
            if (rhs.size() == 1 && rhs[0].str() == "~")
                rhs.clear();
            else if (rhs.empty())
                throw Error(ErrorKind::grammar_invalid, "line " + std::to_string(lineno) + ": empty alternative (write ~ for ε)");
            g.add(Name(lhs), std::move(rhs));
            if (bar == std::string_view::npos)
                break;
            start = bar + 1;
        }
    }
    if (g.start_.empty() && !g.productions_.empty())
        g.start_ = g.productions_.front().lhs;
    g.validate();
    return g;
}

std::string Cfg::str() const
{
    std::ostringstream out;
    out << "start: " << start_ << '\n';
    std::vector<Name> order;
    for (const Production& p : productions_)
        if (std::find(order.begin(), order.end(), p.lhs) == order.end())
            order.push_back(p.lhs);
    for (Name a : order) {
        out << a << " ->";
        bool first = true;
        for (const Production& p : productions_) {
            if (p.lhs != a)
                continue;
            out << (first ? " " : " | ") << (p.rhs.empty() ? "~" : word_str(p.rhs));
            first = false;
        }
        out << '\n';
    }
    return out.str();
}

DerivationTrees derivation_tree_fta(const Cfg& g)
{
    g.validate();
    Signature sig;
    for (Name a : g.terminals())
        sig.leaves.add(a);
    for (const Production& p : g.productions())
        sig.ranked.add(p.name, static_cast<unsigned>(p.rhs.size()));
    sig.validate();
    Fta a(sig);
    std::map<Name, State> state;
    for (Name n : g.nonterminals())
        state[n] = a.add_state(std::string(n.str()));
    for (Name t : g.terminals()) {
        State q = a.add_state("'" + std::string(t.str()) + "'");
        state[t] = q;
        a.add_rule(q, t);
    }
    a.set_final(state.at(g.start()));
    for (const Production& p : g.productions()) {
        std::vector<State> kids;
        for (Name x : p.rhs)
            kids.push_back(state.at(x));
        a.add_rule(state.at(p.lhs), p.name, std::move(kids));
    }
    return {std::move(sig), std::move(a)};
}

std::set<Word> generate(const Cfg& g, std::size_t max_length)
{
    g.validate();
    std::map<Name, std::set<Word>> lang;
    for (Name t : g.terminals())
        lang[t] = {Word{t}};
    for (Name n : g.nonterminals())
        lang[n];
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Production& p : g.productions()) {
            std::set<Word> partial{Word{}};
            for (Name x : p.rhs) {
                std::set<Word> next;
                for (const Word& a : partial)
                    for (const Word& b : lang[x])
                        if (a.size() + b.size() <= max_length) {
                            Word w = a;
                            w.insert(w.end(), b.begin(), b.end());
                            next.insert(std::move(w));
                        }
                partial = std::move(next);
            }
            for (const Word& w : partial)
                changed = lang[p.lhs].insert(w).second || changed;
        }
    }
    return lang[g.start()];
}

namespace {

// Binary rules A -> B C, unit rules A -> B, and nullable symbols of an
// equivalent grammar whose right-hand sides have length at most two.
struct Binarized {
    std::vector<std::tuple<Name, Name, Name>> binary;
    std::vector<std::pair<Name, Name>> unit;
    std::set<Name> nullable;
};

Binarized binarize(const Cfg& g)
{
    Binarized out;
    std::size_t fresh = 0;
    for (const Production& p : g.productions()) {
        if (p.rhs.empty()) {
            out.nullable.insert(p.lhs);
        } else if (p.rhs.size() == 1) {
            out.unit.emplace_back(p.lhs, p.rhs[0]);
        } else {
            Name left = p.lhs;
            for (std::size_t i = 0; i + 2 < p.rhs.size(); ++i) {
                Name next("@bin" + std::to_string(fresh++));
                out.binary.emplace_back(left, p.rhs[i], next);
                left = next;
            }
            out.binary.emplace_back(left, p.rhs[p.rhs.size() - 2], p.rhs.back());
        }
    }
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& [a, b] : out.unit)
            if (out.nullable.count(b) && out.nullable.insert(a).second)
                changed = true;
        for (const auto& [a, b, c] : out.binary)
            if (out.nullable.count(b) && out.nullable.count(c) && out.nullable.insert(a).second)
                changed = true;
    }
    return out;
}

} // namespace

bool cyk_member(const Cfg& g, const Word& w)
{
    g.validate();
    const Binarized bin = binarize(g);
    const std::size_t n = w.size();
    // chart[i][j]: symbols deriving w[i..j).
    std::vector<std::vector<std::set<Name>>> chart(n + 1, std::vector<std::set<Name>>(n + 1));
    for (std::size_t i = 0; i <= n; ++i)
        chart[i][i] = bin.nullable;
    for (std::size_t len = 1; len <= n; ++len) {
        for (std::size_t i = 0; i + len <= n; ++i) {
            const std::size_t j = i + len;
            auto& cell = chart[i][j];
            if (len == 1)
                cell.insert(w[i]);
            for (bool changed = true; changed;) {
                changed = false;
                for (const auto& [a, b] : bin.unit)
                    if (cell.count(b) && cell.insert(a).second)
                        changed = true;
                for (const auto& [a, b, c] : bin.binary) {
                    if (cell.count(a))
                        continue;
                    for (std::size_t k = i; k <= j; ++k)
                        if (chart[i][k].count(b) && chart[k][j].count(c)) {
                            cell.insert(a);
                            changed = true;
                            break;
                        }
                }
            }
        }
    }
    if (n == 0)
        return bin.nullable.count(g.start()) != 0;
    return chart[0][n].count(g.start()) != 0;
}

} // namespace bimorph
