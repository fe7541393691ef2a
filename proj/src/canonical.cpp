#include "bimorph/bimorphism.hpp"
#include "bimorph/error.hpp"

namespace bimorph {

namespace {

std::vector<Tree> variables(unsigned k)
{
    std::vector<Tree> out;
    for (unsigned i = 1; i <= k; ++i)
        out.push_back(Tree::variable(i));
    return out;
}

} // namespace

Name ProductAlphabet::add(const Tree& t, const Tree& u, unsigned k)
{
    Name name("<" + t.str() + "," + u.str() + ">");
    if (k == 0 && t.is_leaf() && u.is_leaf())
        signature.leaves.add(name);
    else
        signature.ranked.add(name, k);
    components.insert_or_assign(name, std::make_pair(t, u));
    return name;
}

ProductAlphabet ProductAlphabet::merged(const ProductAlphabet& other) const
{
    ProductAlphabet out{base_left.merged(other.base_left), base_right.merged(other.base_right),
                        signature.merged(other.signature), components};
    out.components.insert(other.components.begin(), other.components.end());
    return out;
}

TreeHom ProductAlphabet::rho1() const
{
    TreeHom rho(signature, base_left);
    for (const auto& [name, parts] : components) {
        if (signature.leaves.contains(name))
            rho.map_leaf(name, parts.first);
        else
            rho.map_symbol(name, parts.first);
    }
    return rho;
}

TreeHom ProductAlphabet::rho2() const
{
    TreeHom rho(signature, base_right);
    for (const auto& [name, parts] : components) {
        if (signature.leaves.contains(name))
            rho.map_leaf(name, parts.second);
        else
            rho.map_symbol(name, parts.second);
    }
    return rho;
}

Bimorphism CanonicalForm::as_bimorphism() const
{
    return {alphabet.rho1(), language, alphabet.rho2()};
}

CanonicalForm canonical_form(const Bimorphism& b)
{
    b.validate();
    if (!b.quasi_alphabetic())
        throw Error(ErrorKind::class_mismatch, "canonical form needs a quasi-alphabetic bimorphism");
    ProductAlphabet pa{b.phi.target(), b.psi.target(), {}, {}};
    std::map<Name, Name> names;
    for (Name z : b.phi.source().leaves.names())
        names[z] = pa.add(b.phi.image_of(z), b.psi.image_of(z), 0);
    for (const auto& [f, k] : b.phi.source().ranked.symbols())
        names[f] = pa.add(b.phi.image_of(f), b.psi.image_of(f), k);

    TreeHom eta(b.phi.source(), pa.signature);
    for (Name z : b.phi.source().leaves.names())
        eta.map_leaf(z, Tree::leaf(names[z]));
    for (const auto& [f, k] : b.phi.source().ranked.symbols())
        eta.map_symbol(f, Tree::node(names[f], variables(k)));
    Fta language = image(b.center, eta);
    return {std::move(pa), std::move(eta), std::move(language)};
}

Bimorphism bimorphism_union(const Bimorphism& b1, const Bimorphism& b2)
{
    CanonicalForm c1 = canonical_form(b1);
    CanonicalForm c2 = canonical_form(b2);
    ProductAlphabet pa = c1.alphabet.merged(c2.alphabet);
    return {pa.rho1(), language_union(c1.language, c2.language), pa.rho2()};
}

} // namespace bimorph
