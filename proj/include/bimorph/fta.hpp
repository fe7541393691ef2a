#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "bimorph/alphabet.hpp"
#include "bimorph/tree.hpp"

namespace bimorph {

class TreeHom;

using State = std::uint32_t;

/// q -> f(q1..qk). `symbol` is a ranked symbol or a leaf of the signature.
struct FtaRule {
    State target;
    Name symbol;
    std::vector<State> children;

    auto operator<=>(const FtaRule&) const = default;
};

/// Finite tree automaton over a signature. Leaves of the signature act as
/// rank-0 labels. Rules are kept in the top-down orientation q -> f(q1..qk);
/// recognition runs bottom-up.
class Fta {
public:
    Fta() = default;
    explicit Fta(Signature sig);

    const Signature& signature() const noexcept { return sig_; }

    /// Returns the new state; an empty label becomes "q<index>".
    State add_state(std::string label = {});
    std::size_t state_count() const noexcept { return labels_.size(); }
    const std::string& state_label(State q) const { return labels_.at(q); }
    /// Index of the state with this label, or -1.
    long find_state(std::string_view label) const;

    void set_final(State q, bool final = true);
    bool is_final(State q) const { return final_.at(q) != 0; }
    std::vector<State> final_states() const;

    /// Validates arity against the signature; duplicate rules are ignored.
    void add_rule(State target, Name symbol, std::vector<State> children = {});
    const std::vector<FtaRule>& rules() const noexcept { return rules_; }
    /// Indices into rules() of the rules labelled `symbol`.
    const std::vector<std::size_t>& rules_for(Name symbol) const;

    /// Characteristic vector of the states q with t in L(A)_q.
    std::vector<char> run(const Tree& t) const;
    bool accepts(const Tree& t) const;
    bool accepts_from(State q, const Tree& t) const;

    std::string str() const;

private:
    std::vector<char> run_unchecked(const Tree& t) const;

    Signature sig_;
    std::vector<std::string> labels_;
    std::unordered_map<std::string, State> index_;
    std::vector<char> final_;
    std::vector<FtaRule> rules_;
    std::unordered_map<Name, std::vector<std::size_t>> by_symbol_;
    std::set<FtaRule> rule_set_;
};

/// States from which some tree is accepted.
std::vector<char> productive_states(const Fta& a);
bool is_empty(const Fta& a);
/// Equivalent automaton keeping only productive states reachable from a
/// final state.
Fta trim(const Fta& a);

/// Automaton over the merged signature; alphabets must be compatible.
Fta language_union(const Fta& a, const Fta& b);
Fta language_intersection(const Fta& a, const Fta& b);

/// {t in L(A) | hg(t) <= h}. Rules at each height level are expanded in
/// parallel.
TreeSet enumerate(const Fta& a, std::size_t h);
/// Straightforward serial fixpoint; reference for enumerate().
TreeSet enumerate_serial(const Fta& a, std::size_t h);

/// {t phi | t in L(A)}; phi must be linear.
Fta image(const Fta& a, const TreeHom& phi);
/// {t | t phi in L(A)} over the source signature of phi.
Fta preimage_hom(const Fta& a, const TreeHom& phi);

Fta singleton_fta(const Tree& t, const Signature& sig);
Fta finite_language_fta(const TreeSet& trees, const Signature& sig);
/// Automaton for all ground trees over the signature.
Fta universal_fta(const Signature& sig);

/// f(L1..Lk).
TreeSet lang_top_catenation(Name f, const std::vector<TreeSet>& ls);
/// L .v L' with each occurrence of v replaced independently.
TreeSet lang_v_product(const TreeSet& l, const TreeSet& l2, Name v);
/// {t in candidates | {t} .v L' meets L}.
TreeSet lang_v_quotient(const TreeSet& l, const TreeSet& l2, const TreeSet& candidates, Name v);

} // namespace bimorph
