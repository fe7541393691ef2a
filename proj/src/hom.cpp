#include "bimorph/hom.hpp"

#include <sstream>

#include "bimorph/error.hpp"

namespace bimorph {

TreeHom::TreeHom(Signature source, Signature target) : source_(std::move(source)), target_(std::move(target))
{
    source_.validate();
    target_.validate();
}

void TreeHom::map_leaf(Name v, Tree image)
{
    if (!source_.leaves.contains(v))
        throw Error(ErrorKind::alphabet_mismatch, "'" + std::string(v.str()) + "' is not a source leaf");
    if (!image.is_ground())
        throw Error(ErrorKind::unbound_variable, "leaf image " + image.str() + " contains variables");
    target_.check(image);
    images_.insert_or_assign(v, std::move(image));
}

void TreeHom::map_symbol(Name f, Tree image)
{
    if (!source_.ranked.contains(f))
        throw Error(ErrorKind::alphabet_mismatch, "'" + std::string(f.str()) + "' is not a source symbol");
    unsigned k = source_.ranked.rank(f);
    if (image.max_variable() > k)
        throw Error(ErrorKind::unbound_variable, "image of " + std::string(f.str()) + "/" + std::to_string(k) + " uses x"
                                                     + std::to_string(image.max_variable()));
    target_.check(image);
    images_.insert_or_assign(f, std::move(image));
}

const Tree& TreeHom::image_of(Name symbol) const
{
    auto it = images_.find(symbol);
    if (it == images_.end())
        throw Error(ErrorKind::unmapped_symbol, "no image for '" + std::string(symbol.str()) + "'");
    return it->second;
}

void TreeHom::require_total() const
{
    for (Name v : source_.leaves.names())
        image_of(v);
    for (const auto& [f, k] : source_.ranked.symbols())
        image_of(f);
}

namespace {

Tree apply_rec(const TreeHom& phi, const Tree& t)
{
    const Tree& img = phi.image_of(t.name());
    if (t.rank() == 0)
        return img;
    std::vector<Tree> kids;
    kids.reserve(t.rank());
    for (const Tree& c : t.children())
        kids.push_back(apply_rec(phi, c));
    return substitute(img, kids);
}

} // namespace

Tree TreeHom::apply(const Tree& t) const
{
    if (!t.is_ground())
        throw Error(ErrorKind::unbound_variable, "homomorphisms apply to ground trees, got " + t.str());
    source_.check(t);
    return apply_rec(*this, t);
}

std::string TreeHom::str() const
{
    std::ostringstream out;
    for (Name v : source_.leaves.names())
        if (auto it = images_.find(v); it != images_.end())
            out << v << " |-> " << it->second << '\n';
    for (const auto& [f, k] : source_.ranked.symbols())
        if (auto it = images_.find(f); it != images_.end())
            out << f << '/' << k << " |-> " << it->second << '\n';
    return out.str();
}

TreeHom identity_hom(const Signature& sig)
{
    TreeHom id(sig, sig);
    for (Name v : sig.leaves.names())
        id.map_leaf(v, Tree::leaf(v));
    for (const auto& [f, k] : sig.ranked.symbols()) {
        std::vector<Tree> vars;
        for (unsigned i = 1; i <= k; ++i)
            vars.push_back(Tree::variable(i));
        id.map_symbol(f, Tree::node(f, std::move(vars)));
    }
    return id;
}

std::string HomFlags::str() const
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
    add(complete, "complete");
    add(symbol_to_symbol, "symbol_to_symbol");
    add(alphabetic, "alphabetic");
    add(strictly_alphabetic, "strictly_alphabetic");
    add(quasi_alphabetic, "quasi_alphabetic");
    add(normalized, "normalized");
    return out;
}

namespace {

// Delta(S): a Delta symbol whose children all satisfy `child_ok`.
template <class Pred>
bool one_symbol_over(const Tree& t, Pred child_ok)
{
    if (!t.is_symbol())
        return false;
    for (const Tree& c : t.children())
        if (!child_ok(c))
            return false;
    return true;
}

} // namespace

HomFlags classify(const TreeHom& phi)
{
    phi.require_total();
    bool linear = true, complete = true, leaf_to_leaf = true;
    bool ss_symbols = true, alph_symbols = true, qa_symbols = true, normalized = true;
    const LeafAlphabet& y = phi.target().leaves;
    auto is_y = [&y](const Tree& c) { return c.is_leaf() && y.contains(c.name()); };

    for (Name v : phi.source().leaves.names())
        leaf_to_leaf = leaf_to_leaf && is_y(phi.image_of(v));

    for (const auto& [f, k] : phi.source().ranked.symbols()) {
        const Tree& img = phi.image_of(f);
        auto counts = variable_counts(img, k);
        for (unsigned i = 1; i <= k; ++i) {
            linear = linear && counts[i] <= 1;
            complete = complete && counts[i] >= 1;
        }
        auto yd = variable_yield(img);
        for (std::size_t i = 0; i < yd.size(); ++i)
            normalized = normalized && yd[i] == i + 1;
        ss_symbols = ss_symbols && one_symbol_over(img, [](const Tree& c) { return c.is_variable(); });
        alph_symbols = alph_symbols && (img.is_variable() || one_symbol_over(img, [](const Tree& c) { return c.is_variable(); }));
        qa_symbols = qa_symbols && one_symbol_over(img, [&](const Tree& c) { return c.is_variable() || is_y(c); });
    }

    HomFlags out;
    out.linear = linear;
    out.complete = complete;
    out.symbol_to_symbol = leaf_to_leaf && ss_symbols;
    out.alphabetic = linear && leaf_to_leaf && alph_symbols;
    out.strictly_alphabetic = complete && out.alphabetic && out.symbol_to_symbol;
    out.quasi_alphabetic = linear && complete && leaf_to_leaf && qa_symbols;
    out.normalized = normalized;
    return out;
}

HeightVerdict check_height_bounds(const TreeHom& phi, const Tree& t, HomClass cls)
{
    HomFlags flags = classify(phi);
    bool member = cls == HomClass::quasi_alphabetic   ? flags.quasi_alphabetic
                  : cls == HomClass::symbol_to_symbol ? flags.symbol_to_symbol
                                                      : flags.strictly_alphabetic;
    if (!member)
        throw Error(ErrorKind::class_mismatch, "homomorphism is not in the requested class (flags: " + flags.str() + ")");
    HeightVerdict v;
    v.source_height = t.height();
    v.image_height = phi.apply(t).height();
    switch (cls) {
    case HomClass::quasi_alphabetic:
        v.lower = v.source_height <= v.image_height;
        v.upper = v.image_height <= v.source_height + 1;
        break;
    case HomClass::symbol_to_symbol:
        v.lower = true;
        v.upper = v.image_height <= v.source_height;
        break;
    case HomClass::strictly_alphabetic:
        v.lower = v.source_height <= v.image_height;
        v.upper = v.image_height <= v.source_height;
        break;
    }
    return v;
}

} // namespace bimorph
