#include "bimorph/bimorphism.hpp"

namespace bimorph {

namespace {

Tree x(unsigned i)
{
    return Tree::variable(i);
}

} // namespace

NonclosureWitness nonclosure_witness()
{
    Signature sigma;
    sigma.ranked = RankedAlphabet::parse("f/2 g/1 e/0");

    TreeHom psi1(sigma, sigma), psi2(sigma, sigma);
    psi1.map_symbol("f", Tree::node("f", {x(1), x(2)}));
    psi1.map_symbol("g", Tree::node("g", {x(1)}));
    psi1.map_symbol("e", Tree::node("e"));
    psi2.map_symbol("f", Tree::node("f", {x(2), x(1)}));
    psi2.map_symbol("g", Tree::node("g", {x(1)}));
    psi2.map_symbol("e", Tree::node("e"));

    // q -> f(p, p), p -> g(p) | e
    Fta l(sigma);
    State q = l.add_state("q");
    State p = l.add_state("p");
    l.set_final(q);
    l.add_rule(q, "f", {p, p});
    l.add_rule(p, "g", {p});
    l.add_rule(p, "e");
    return {sigma, psi1, psi2, l};
}

TreeSet nonclosure_expected_image(std::size_t h)
{
    TreeSet out;
    for (std::size_t n = 0; n + 1 <= h; ++n) {
        Tree arm = iterate_unary("g", n, Tree::node("e"));
        out.insert(Tree::node("f", {arm, arm}));
    }
    return out;
}

TreeSet intersection_image(const TreeHom& psi1, const TreeHom& psi2, const Fta& language, std::size_t h)
{
    TreeSet out;
    for (const Tree& t : enumerate(language, h)) {
        Tree a = psi1.apply(t);
        if (a == psi2.apply(t))
            out.insert(a);
    }
    return out;
}

Bimorphism qaln_bimorphism()
{
    Signature gamma;
    gamma.ranked.add("e", 0);
    Signature sigma;
    sigma.ranked.add("f", 2);
    sigma.leaves = LeafAlphabet{"v1", "v2"};

    TreeHom phi(gamma, sigma);
    phi.map_symbol("e", Tree::node("f", {Tree::leaf("v1"), Tree::leaf("v2")}));
    TreeHom psi = identity_hom(gamma);

    Fta center(gamma);
    State q = center.add_state("q");
    center.set_final(q);
    center.add_rule(q, "e");
    return {std::move(phi), std::move(center), std::move(psi)};
}

} // namespace bimorph
