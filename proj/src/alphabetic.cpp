#include "bimorph/bimorphism.hpp"
#include "bimorph/error.hpp"
#include "bimorph/transducer.hpp"

namespace bimorph {

namespace {

Name pick_leaf(const LeafAlphabet& leaves, const char* padding)
{
    return leaves.empty() ? Name(padding) : *leaves.names().begin();
}

std::string index_list(const std::vector<unsigned>& w)
{
    std::string out = "[";
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(w[i]);
    }
    return out + "]";
}

// Index word of a depth-one image: x_i stays i, the a-th leaf of the
// alphabet becomes k + a.
std::vector<unsigned> index_word(const Tree& t, const LeafAlphabet& leaves, unsigned k, std::vector<Name>& found)
{
    std::vector<unsigned> w;
    for (const Tree& c : t.children()) {
        if (c.is_variable()) {
            w.push_back(c.var_index());
        } else if (c.is_leaf() && leaves.contains(c.name())) {
            found.push_back(c.name());
            w.push_back(k + static_cast<unsigned>(found.size()));
        }
    }
    return w;
}

Tree rebuild(const Tree& root, const std::vector<unsigned>& w)
{
    std::vector<Tree> kids;
    for (unsigned i : w)
        kids.push_back(Tree::variable(i));
    return Tree::node(root.name(), std::move(kids));
}

} // namespace

AlphabeticForm to_alphabetic(const Bimorphism& b)
{
    b.validate();
    if (!b.quasi_alphabetic())
        throw Error(ErrorKind::class_mismatch, "alphabetic embedding needs a quasi-alphabetic bimorphism");
    Signature left = b.phi.target();
    Signature right = b.psi.target();
    const Name v0 = pick_leaf(left.leaves, "@v");
    const Name y0 = pick_leaf(right.leaves, "@y");
    left.leaves.add(v0);
    right.leaves.add(y0);

    struct Joined {
        Tree left_image;
        Tree right_image;
        bool leaf;
    };
    Signature joined;
    std::map<Name, Joined> parts;
    auto leaf_pair = [&](Name v, Name y) {
        Name name("<" + std::string(v.str()) + "," + std::string(y.str()) + ">");
        joined.leaves.add(name);
        parts.insert_or_assign(name, Joined{Tree::leaf(v), Tree::leaf(y), true});
        return Tree::leaf(name);
    };

    std::map<Name, Tree> rho_images;
    for (Name z : b.phi.source().leaves.names())
        rho_images.emplace(z, leaf_pair(b.phi.image_of(z).name(), b.psi.image_of(z).name()));
    for (const auto& [f, k] : b.phi.source().ranked.symbols()) {
        const Tree& t = b.phi.image_of(f);
        const Tree& u = b.psi.image_of(f);
        std::vector<Name> vs, ys;
        auto w = index_word(t, b.phi.target().leaves, k, vs);
        auto w2 = index_word(u, b.psi.target().leaves, k, ys);
        const std::size_t l = std::max(vs.size(), ys.size());
        std::vector<Tree> kids;
        for (unsigned i = 1; i <= k; ++i)
            kids.push_back(Tree::variable(i));
        for (std::size_t a = 0; a < l; ++a)
            kids.push_back(leaf_pair(a < vs.size() ? vs[a] : v0, a < ys.size() ? ys[a] : y0));
        Name name("<" + std::string(t.name().str()) + index_list(w) + "," + std::string(u.name().str()) + index_list(w2) + ">");
        joined.ranked.add(name, static_cast<unsigned>(kids.size()));
        parts.insert_or_assign(name, Joined{rebuild(t, w), rebuild(u, w2), false});
        rho_images.emplace(f, Tree::node(name, std::move(kids)));
    }

    TreeHom rho(b.phi.source(), joined);
    for (const auto& [f, img] : rho_images) {
        if (b.phi.source().leaves.contains(f))
            rho.map_leaf(f, img);
        else
            rho.map_symbol(f, img);
    }
    TreeHom phi_left(joined, left), phi_right(joined, right);
    for (const auto& [name, p] : parts) {
        if (p.leaf) {
            phi_left.map_leaf(name, p.left_image);
            phi_right.map_leaf(name, p.right_image);
        } else {
            phi_left.map_symbol(name, p.left_image);
            phi_right.map_symbol(name, p.right_image);
        }
    }
    Fta center = image(b.center, rho);
    return {Bimorphism{std::move(phi_left), std::move(center), std::move(phi_right)}, std::move(rho)};
}

Bimorphism from_finite_state_relabeling(const Transducer& m)
{
    if (!classify(m).finite_state_relabeling)
        throw Error(ErrorKind::class_mismatch, "transducer is not a finite-state relabeling");
    Signature gamma;
    std::vector<Name> names;
    for (std::size_t i = 0; i < m.rules().size(); ++i) {
        const TdRule& r = m.rules()[i];
        names.emplace_back("r" + std::to_string(i + 1));
        if (r.pattern.is_leaf())
            gamma.leaves.add(names.back());
        else
            gamma.ranked.add(names.back(), static_cast<unsigned>(r.pattern.rank()));
    }
    Fta center(gamma);
    for (State q = 0; q < m.state_count(); ++q) {
        center.add_state(m.state_label(q));
        center.set_final(q, m.is_final(q));
    }
    TreeHom phi(gamma, m.input()), psi(gamma, m.output());
    for (std::size_t i = 0; i < m.rules().size(); ++i) {
        const TdRule& r = m.rules()[i];
        std::vector<State> kids;
        for (const StateCall& c : r.calls)
            kids.push_back(c.state);
        center.add_rule(r.state, names[i], std::move(kids));
        if (r.pattern.is_leaf()) {
            phi.map_leaf(names[i], r.pattern);
            psi.map_leaf(names[i], r.rhs);
        } else {
            phi.map_symbol(names[i], r.pattern);
            psi.map_symbol(names[i], r.rhs);
        }
    }
    return {std::move(phi), std::move(center), std::move(psi)};
}

} // namespace bimorph
