#include <algorithm>
#include <map>
#include <set>

#include "bimorph/error.hpp"
#include "bimorph/transducer.hpp"

namespace bimorph {

namespace {

// A pending look-ahead requirement: the subtree must be accepted from
// `state` of look-ahead automaton number `automaton`.
using Obligation = std::pair<std::size_t, State>;
using Obligations = std::set<Obligation>;

constexpr long deleted = -1;

// State of the preimage automaton: the subtree is translated from
// transducer state q (or deleted) into an output accepted from A-state p,
// and satisfies every obligation.
struct Key {
    long q;
    State p;
    Obligations obligations;

    auto operator<=>(const Key&) const = default;
};

using Assignment = std::vector<State>;
constexpr State unassigned = static_cast<State>(-1);

// Every assignment of A-states to the call variables of `rhs` under which
// A reaches p at the root.
std::vector<Assignment> assignments(const Fta& a, const Tree& rhs, State p, std::size_t ncalls)
{
    if (rhs.is_variable()) {
        Assignment as(ncalls, unassigned);
        as[rhs.var_index() - 1] = p;
        return {as};
    }
    std::vector<Assignment> out;
    for (std::size_t r : a.rules_for(rhs.name())) {
        const FtaRule& rule = a.rules()[r];
        if (rule.target != p || rule.children.size() != rhs.rank())
            continue;
        std::vector<Assignment> partial{Assignment(ncalls, unassigned)};
        for (std::size_t i = 0; i < rhs.rank() && !partial.empty(); ++i) {
            auto sub = assignments(a, rhs.child(i), rule.children[i], ncalls);
            std::vector<Assignment> next;
            for (const Assignment& x : partial)
                for (const Assignment& y : sub) {
                    Assignment z = x;
                    for (std::size_t j = 0; j < ncalls; ++j)
                        if (y[j] != unassigned)
                            z[j] = y[j];
                    next.push_back(std::move(z));
                }
            partial = std::move(next);
        }
        out.insert(out.end(), partial.begin(), partial.end());
    }
    return out;
}

class PreimageBuilder {
public:
    PreimageBuilder(const Transducer& m, const Fta& a) : m_(m), a_(a), out_(m.input())
    {
        for (const TdRule& r : m.rules()) {
            const Tree& p = r.pattern;
            if (p.is_variable())
                throw Error(ErrorKind::unsupported_shape, "left-hand side " + m.rule_str(r) + " reads no input symbol");
            for (const Tree& c : p.children())
                if (!c.is_variable())
                    throw Error(ErrorKind::unsupported_shape, "left-hand side of " + m.rule_str(r) + " is deeper than one symbol");
            Lookahead la = r.lookahead.as_regular(m.input());
            std::size_t id = 0;
            if (la.kind == LookaheadKind::regular) {
                auto it = std::find(automata_.begin(), automata_.end(), la.automaton);
                id = static_cast<std::size_t>(it - automata_.begin());
                if (it == automata_.end())
                    automata_.push_back(la.automaton);
            }
            lookaheads_.push_back({std::move(la), id});
        }
    }

    Fta build()
    {
        for (State q : m_.final_states())
            for (State p : a_.final_states())
                out_.set_final(state_of({static_cast<long>(q), p, {}}));
        while (!pending_.empty()) {
            Key k = pending_.back();
            pending_.pop_back();
            expand(k);
        }
        return trim(out_);
    }

private:
    State state_of(const Key& k)
    {
        auto it = index_.find(k);
        if (it != index_.end())
            return it->second;
        std::string label = "[" + (k.q == deleted ? std::string("_") : m_.state_label(static_cast<State>(k.q)));
        label += "," + (k.q == deleted ? std::string("_") : a_.state_label(k.p));
        for (const auto& [aut, s] : k.obligations)
            label += ",la" + std::to_string(aut) + ":" + automata_[aut]->state_label(s);
        label += "]";
        State s = out_.add_state(label);
        index_.emplace(k, s);
        pending_.push_back(k);
        return s;
    }

    // Distributes the obligations over the k children of a node labelled f.
    std::vector<std::vector<Obligations>> split(const Obligations& obl, Name f, std::size_t k) const
    {
        std::vector<std::vector<Obligations>> out{std::vector<Obligations>(k)};
        for (const auto& [aut, s] : obl) {
            const Fta& c = *automata_[aut];
            std::vector<std::vector<Obligations>> next;
            for (std::size_t r : c.rules_for(f)) {
                const FtaRule& rule = c.rules()[r];
                if (rule.target != s || rule.children.size() != k)
                    continue;
                for (const auto& partial : out) {
                    auto ext = partial;
                    for (std::size_t i = 0; i < k; ++i)
                        ext[i].insert({aut, rule.children[i]});
                    next.push_back(std::move(ext));
                }
            }
            out = std::move(next);
            if (out.empty())
                break;
        }
        return out;
    }

    void expand(const Key& k)
    {
        State self = index_.at(k);
        const Signature& sig = m_.input();
        std::vector<std::pair<Name, std::size_t>> symbols;
        for (Name v : sig.leaves.names())
            symbols.emplace_back(v, 0);
        for (const auto& [f, r] : sig.ranked.symbols())
            symbols.emplace_back(f, r);

        for (const auto& [f, rank] : symbols) {
            auto splits = split(k.obligations, f, rank);
            if (splits.empty())
                continue;
            if (k.q == deleted) {
                for (const auto& s : splits) {
                    std::vector<State> kids;
                    for (std::size_t i = 0; i < rank; ++i)
                        kids.push_back(state_of({deleted, 0, s[i]}));
                    out_.add_rule(self, f, std::move(kids));
                }
                continue;
            }
            for (std::size_t ri = 0; ri < m_.rules().size(); ++ri) {
                const TdRule& rule = m_.rules()[ri];
                if (static_cast<long>(rule.state) != k.q || rule.pattern.name() != f || rule.pattern.rank() != rank)
                    continue;
                const auto& [la, aut] = lookaheads_[ri];
                std::vector<std::vector<Obligations>> with_la;
                if (la.kind == LookaheadKind::regular) {
                    for (State acc : la.accepting) {
                        Obligations root = k.obligations;
                        root.insert({aut, acc});
                        auto s = split(root, f, rank);
                        with_la.insert(with_la.end(), s.begin(), s.end());
                    }
                } else {
                    with_la = splits;
                }
                auto outs = assignments(a_, rule.rhs, k.p, rule.calls.size());
                for (const auto& s : with_la)
                    for (const Assignment& as : outs) {
                        std::vector<State> kids;
                        for (std::size_t i = 0; i < rank; ++i) {
                            unsigned var = rule.pattern.child(i).var_index();
                            long q = deleted;
                            State p = 0;
                            for (std::size_t j = 0; j < rule.calls.size(); ++j)
                                if (rule.calls[j].var == var) {
                                    q = rule.calls[j].state;
                                    p = as[j];
                                }
                            kids.push_back(state_of({q, p, s[i]}));
                        }
                        out_.add_rule(self, f, std::move(kids));
                    }
            }
        }
    }

    const Transducer& m_;
    const Fta& a_;
    Fta out_;
    std::vector<std::shared_ptr<const Fta>> automata_;
    std::vector<std::pair<Lookahead, std::size_t>> lookaheads_;
    std::map<Key, State> index_;
    std::vector<Key> pending_;
};

} // namespace

Fta preimage(const Transducer& m, const Fta& a)
{
    if (!classify(m).linear)
        throw Error(ErrorKind::class_mismatch, "preimage needs a linear transducer");
    a.signature().merged(m.output());
    const Fta trimmed = trim(a);
    return PreimageBuilder(m, trimmed).build();
}

} // namespace bimorph
