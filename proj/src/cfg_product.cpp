#include <map>

#include "bimorph/bimorphism.hpp"
#include "bimorph/cfg.hpp"
#include "bimorph/error.hpp"
#include "bimorph/transducer.hpp"

namespace bimorph {

namespace {

std::vector<Tree> variables(unsigned from, unsigned to)
{
    std::vector<Tree> out;
    for (unsigned i = from; i <= to; ++i)
        out.push_back(Tree::variable(i));
    return out;
}

void pad(RankedAlphabet& sigma)
{
    if (sigma.symbols_of_rank(1).empty())
        sigma.add("@u", 1);
    if (sigma.symbols_of_rank(0).empty())
        sigma.add("@n", 0);
}

struct Join {
    Name name;
    Name left;
    Name right;
    unsigned rank;
};

// Side-specific view: which component a transducer or homomorphism reads.
struct Side {
    const RankedAlphabet& own;
    bool first;

    Name pick(const Join& j) const { return first ? j.left : j.right; }
    Name other(const Join& j) const { return first ? j.right : j.left; }
};

// Look-ahead automaton: "all" accepts everything, "yfree" the trees whose
// own-side components avoid Y, and root(j) the look-ahead of the rule for
// join symbol j: the own-side children unconstrained, the rest Y-free.
struct SharedLookahead {
    std::shared_ptr<Fta> automaton;
    std::map<Name, State> root;
};

SharedLookahead make_lookahead(const Signature& join_sig, const std::vector<Join>& joins, const Side& side,
                               const std::map<Name, Name>& y_to_v)
{
    SharedLookahead la;
    la.automaton = std::make_shared<Fta>(join_sig);
    Fta& a = *la.automaton;
    State all = a.add_state("all");
    State yfree = a.add_state("yfree");
    for (const Join& j : joins) {
        a.add_rule(all, j.name, std::vector<State>(j.rank, all));
        if (!y_to_v.count(side.pick(j)))
            a.add_rule(yfree, j.name, std::vector<State>(j.rank, yfree));
    }
    for (const Join& j : joins) {
        State r = a.add_state("root" + std::string(j.name.str()));
        unsigned own = y_to_v.count(side.pick(j)) ? 0 : side.own.rank(side.pick(j));
        std::vector<State> kids(own, all);
        kids.resize(j.rank, yfree);
        a.add_rule(r, j.name, std::move(kids));
        la.root[j.name] = r;
    }
    return la;
}

Transducer projection_transducer(const Signature& join_sig, const std::vector<Join>& joins, const Side& side,
                                 const Signature& out_sig, const std::map<Name, Name>& y_to_v)
{
    SharedLookahead la = make_lookahead(join_sig, joins, side, y_to_v);
    std::shared_ptr<const Fta> shared = la.automaton;
    Transducer m(join_sig, out_sig);
    State star = m.add_state("*");
    m.set_final(star);
    for (const Join& j : joins) {
        Name f = side.pick(j);
        Tree pattern = Tree::node(j.name, variables(1, j.rank));
        TdRule rule{star, pattern, Tree::leaf("_"), {}, Lookahead::regular(shared, {la.root.at(j.name)})};
        if (auto it = y_to_v.find(f); it != y_to_v.end()) {
            rule.rhs = Tree::leaf(it->second);
        } else {
            unsigned k = side.own.rank(f);
            rule.rhs = Tree::node(f, variables(1, k));
            for (unsigned i = 1; i <= k; ++i)
                rule.calls.push_back({star, i});
        }
        m.add_rule(std::move(rule));
    }
    return m;
}

// phi_k(<f,g>) = <f,g>(x1..xk) if f is an own-side symbol, otherwise
// <h1,h2>(phi(f)) for k = 0 and <h1,h2>#k(phi(f), x1..xk) for k > 0.
TreeHom projection_hom(const Signature& join_sig, const std::vector<Join>& joins, const Side& side,
                       const LeafAlphabet& v, const std::map<Name, Name>& y_to_v, Name h)
{
    Signature target;
    target.leaves = v;
    target.ranked.add(h, 1);
    std::map<Name, Tree> images;
    for (const Join& j : joins) {
        Name f = side.pick(j);
        auto it = y_to_v.find(f);
        if (it == y_to_v.end()) {
            target.ranked.add(j.name, j.rank);
            images.emplace(j.name, Tree::node(j.name, variables(1, j.rank)));
        } else if (j.rank == 0) {
            images.emplace(j.name, Tree::node(h, {Tree::leaf(it->second)}));
        } else {
            Name wide(std::string(h.str()) + "#" + std::to_string(j.rank));
            target.ranked.add(wide, j.rank + 1);
            std::vector<Tree> kids{Tree::leaf(it->second)};
            for (Tree& x : variables(1, j.rank))
                kids.push_back(std::move(x));
            images.emplace(j.name, Tree::node(wide, std::move(kids)));
        }
    }
    TreeHom out(join_sig, target);
    for (auto& [name, img] : images)
        out.map_symbol(name, std::move(img));
    return out;
}

} // namespace

CfgProduct from_cfg_product(const Cfg& g1, const Cfg& g2)
{
    DerivationTrees d1 = derivation_tree_fta(g1);
    DerivationTrees d2 = derivation_tree_fta(g2);
    LeafAlphabet v = d1.signature.leaves.merged(d2.signature.leaves);
    RankedAlphabet sigma = d1.signature.ranked;
    RankedAlphabet delta = d2.signature.ranked;
    pad(sigma);
    pad(delta);

    std::map<Name, Name> y_to_v;
    for (Name a : v.names())
        y_to_v.emplace(Name("@y." + std::string(a.str())), a);
    RankedAlphabet sigma_bar = sigma, delta_bar = delta;
    for (const auto& [y, a] : y_to_v) {
        sigma_bar.add(y, 0);
        delta_bar.add(y, 0);
    }

    std::vector<Join> joins;
    Signature join_sig;
    for (const auto& [f, kf] : sigma_bar.symbols())
        for (const auto& [g, kg] : delta_bar.symbols()) {
            Join j{Name("<" + std::string(f.str()) + "," + std::string(g.str()) + ">"), f, g, std::max(kf, kg)};
            join_sig.ranked.add(j.name, j.rank);
            joins.push_back(j);
        }

    const Side left{sigma, true}, right{delta, false};
    Transducer m_sigma = projection_transducer(join_sig, joins, left, Signature{sigma, v}, y_to_v);
    Transducer m_delta = projection_transducer(join_sig, joins, right, Signature{delta, v}, y_to_v);

    // <h1,h2>: the least pair of unary symbols.
    Name h("<" + std::string(sigma.symbols_of_rank(1).front().str()) + "," + std::string(delta.symbols_of_rank(1).front().str()) + ">");

    Fta center = language_intersection(preimage(m_sigma, d1.automaton), preimage(m_delta, d2.automaton));
    TreeHom phi = projection_hom(join_sig, joins, left, v, y_to_v, h);
    TreeHom psi = projection_hom(join_sig, joins, right, v, y_to_v, h);
    return {Bimorphism{std::move(phi), std::move(center), std::move(psi)}, std::move(d1.automaton), std::move(d2.automaton)};
}

} // namespace bimorph
