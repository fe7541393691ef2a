#pragma once

#include <map>
#include <string>

#include "bimorph/alphabet.hpp"
#include "bimorph/tree.hpp"

namespace bimorph {

/// Tree homomorphism T_Sigma(V) -> T_Delta(Y), presented by leaf images
/// phi_V(v) and symbol images phi_k(f) over Delta, Y and x1..xk.
class TreeHom {
public:
    TreeHom() = default;
    TreeHom(Signature source, Signature target);

    const Signature& source() const noexcept { return source_; }
    const Signature& target() const noexcept { return target_; }

    void map_leaf(Name v, Tree image);
    void map_symbol(Name f, Tree image);

    /// Image of a source symbol or leaf; throws unmapped-symbol.
    const Tree& image_of(Name symbol) const;
    const std::map<Name, Tree>& images() const noexcept { return images_; }

    /// Throws unmapped-symbol unless every source symbol and leaf is mapped.
    void require_total() const;

    /// t phi for a ground source tree.
    Tree apply(const Tree& t) const;

    std::string str() const;

    bool operator==(const TreeHom&) const = default;

private:
    Signature source_;
    Signature target_;
    std::map<Name, Tree> images_;
};

TreeHom identity_hom(const Signature& sig);

struct HomFlags {
    bool linear = false;
    bool complete = false;
    bool symbol_to_symbol = false;
    bool alphabetic = false;
    bool strictly_alphabetic = false;
    bool quasi_alphabetic = false;
    bool normalized = false;

    /// Names of the set flags, space separated, in declaration order.
    std::string str() const;
    bool operator==(const HomFlags&) const = default;
};

HomFlags classify(const TreeHom& phi);

enum class HomClass { quasi_alphabetic, symbol_to_symbol, strictly_alphabetic };

/// Outcome of the height comparison for one tree. Quasi-alphabetic:
/// lower is hg(t) <= hg(t phi), upper is hg(t phi) <= hg(t) + 1.
/// Symbol-to-symbol: upper is hg(t phi) <= hg(t); there is no lower bound,
/// so lower is always true. Strictly alphabetic: lower and upper together
/// state hg(t phi) = hg(t).
struct HeightVerdict {
    bool lower = false;
    bool upper = false;
    std::size_t source_height = 0;
    std::size_t image_height = 0;
};

/// Throws class-mismatch if phi is not in `cls`.
HeightVerdict check_height_bounds(const TreeHom& phi, const Tree& t, HomClass cls);

} // namespace bimorph
