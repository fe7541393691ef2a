#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "bimorph/alphabet.hpp"
#include "bimorph/fta.hpp"
#include "bimorph/tree.hpp"

namespace bimorph {

struct Production {
    Name name;
    Name lhs;
    std::vector<Name> rhs;
};

/// Context-free grammar. Symbols on a left-hand side are nonterminals,
/// every other right-hand-side symbol is a terminal.
class Cfg {
public:
    Cfg() = default;
    explicit Cfg(Name start) : start_(start) {}

    /// Adds lhs -> rhs named "@<lhs>.<i>" (i counts productions of lhs from 1).
    const Production& add(Name lhs, std::vector<Name> rhs);
    /// Recomputes the terminal set; throws grammar-invalid on a missing
    /// start symbol or a symbol name that cannot label a tree.
    void validate() const;

    Name start() const noexcept { return start_; }
    const std::vector<Production>& productions() const noexcept { return productions_; }
    std::set<Name> nonterminals() const;
    std::set<Name> terminals() const;
    bool is_nonterminal(Name x) const;

    /// "start: S" then one "A -> a S b | a b" line per nonterminal; "~" is ε.
    static Cfg parse(std::string_view text);
    std::string str() const;

private:
    Name start_;
    std::vector<Production> productions_;
};

struct DerivationTrees {
    Signature signature;
    Fta automaton;
};

/// Production names of rank |alpha| over the terminal leaves; the yields
/// of the accepted trees are exactly L(G).
DerivationTrees derivation_tree_fta(const Cfg& g);

/// {w in L(G) | |w| <= max_length}.
std::set<Word> generate(const Cfg& g, std::size_t max_length);
bool cyk_member(const Cfg& g, const Word& w);

} // namespace bimorph
