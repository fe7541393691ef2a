#pragma once

#include <memory>
#include <string>
#include <vector>

#include "bimorph/alphabet.hpp"
#include "bimorph/fta.hpp"
#include "bimorph/tree.hpp"

namespace bimorph {

struct Bimorphism;

enum class LookaheadKind { none, finite, regular };

/// Constraint on the input subtree at the rewrite site.
struct Lookahead {
    LookaheadKind kind = LookaheadKind::none;
    /// finite: the subtree must match one of these patterns; variables
    /// match any subtree, repeated variables equal subtrees.
    std::vector<Tree> patterns;
    /// regular: the subtree must reach one of `accepting` in `automaton`.
    std::shared_ptr<const Fta> automaton;
    std::vector<State> accepting;

    static Lookahead finite(std::vector<Tree> patterns);
    static Lookahead regular(std::shared_ptr<const Fta> automaton, std::vector<State> accepting);

    bool admits(const Tree& s) const;
    /// No constraint, or a finite set containing a bare variable.
    bool is_trivial() const;
    /// Regular form over `sig`; non-linear patterns throw unsupported-shape.
    Lookahead as_regular(const Signature& sig) const;
};

/// q(x_var) in a right-hand side.
struct StateCall {
    State state;
    unsigned var;

    bool operator==(const StateCall&) const = default;
};

/// q(pattern) -> rhs. The rhs is a tree over the output signature in which
/// variable x_j stands for calls[j-1]; each such variable occurs once.
struct TdRule {
    State state;
    Tree pattern;
    Tree rhs;
    std::vector<StateCall> calls;
    Lookahead lookahead;
};

struct TransducerFlags {
    bool linear = false;
    bool nondeleting = false;
    bool finite_state_relabeling = false;
    bool relabeling = false;
    bool fta_shaped = false;

    std::string str() const;
};

class Transducer {
public:
    Transducer() = default;
    Transducer(Signature input, Signature output);

    const Signature& input() const noexcept { return input_; }
    const Signature& output() const noexcept { return output_; }

    State add_state(std::string label = {});
    std::size_t state_count() const noexcept { return labels_.size(); }
    const std::string& state_label(State q) const { return labels_.at(q); }
    long find_state(std::string_view label) const;

    void set_final(State q, bool final = true);
    bool is_final(State q) const { return final_.at(q) != 0; }
    std::vector<State> final_states() const;

    /// Validates the rule: linear pattern over the input, calls on pattern
    /// variables, rhs over the output.
    void add_rule(TdRule rule);
    const std::vector<TdRule>& rules() const noexcept { return rules_; }

    /// Rule text "q(pattern) -> rhs" with calls printed as p(x_i).
    std::string rule_str(const TdRule& r) const;

private:
    Signature input_;
    Signature output_;
    std::vector<std::string> labels_;
    std::vector<char> final_;
    std::vector<TdRule> rules_;
};

/// {t | q(s) =>* t for some final q}. Rewriting deeper than `step_bound`
/// nested state calls throws nontermination-suspected.
TreeSet derive(const Transducer& m, const Tree& s, std::size_t step_bound = 10000);

TransducerFlags classify(const Transducer& m);

/// Linear top-down transducer with finite look-ahead computing tau_B.
Transducer compile_bimorphism(const Bimorphism& b);

/// {s | q(s) =>* t, q final, t in L(A)} for a linear transducer whose
/// patterns are a single input symbol over distinct variables.
Fta preimage(const Transducer& m, const Fta& a);

Transducer fta_as_transducer(const Fta& a);
Fta transducer_as_fta(const Transducer& m);

} // namespace bimorph
