#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>

#include "bimorph/fta.hpp"
#include "bimorph/hom.hpp"

namespace bimorph {

class Transducer;
class Cfg;

/// B = (phi, L, psi) with phi: T_Gamma(Z) -> T_Sigma(V), L given by an
/// automaton over (Gamma, Z), psi: T_Gamma(Z) -> T_Delta(Y).
struct Bimorphism {
    TreeHom phi;
    Fta center;
    TreeHom psi;

    /// Throws alphabet-mismatch unless phi, psi and the center agree on
    /// (Gamma, Z), and unmapped-symbol if a hom is partial.
    void validate() const;
    /// Both homomorphisms quasi-alphabetic.
    bool quasi_alphabetic() const;
};

using WordPair = std::pair<Word, Word>;
using Translation = std::set<WordPair>;

/// {(t phi, t psi) | t in L, hg(t) <= h}.
Relation relation(const Bimorphism& b, std::size_t h);
/// Serial reference for relation().
Relation relation_serial(const Bimorphism& b, std::size_t h);

/// {(yd_V(t phi), yd_Y(t psi)) | t in L, hg(t) <= h}, computed per center
/// state and height on yield pairs without materialising trees.
Translation translation(const Bimorphism& b, std::size_t h);
/// Yields of relation(b, h); reference for translation().
Translation translation_by_enumeration(const Bimorphism& b, std::size_t h);

/// Automaton for {t psi | t in L, t phi = s}; phi must be linear.
Fta apply(const Bimorphism& b, const Tree& s);

Bimorphism invert(const Bimorphism& b);

/// Symbols <t,u> of [Sigma x Delta] and leaves <v,y> of V x Y that occur
/// in a construction, with their components.
struct ProductAlphabet {
    Signature base_left;
    Signature base_right;
    Signature signature;
    std::map<Name, std::pair<Tree, Tree>> components;

    /// Adds <t,u> (rank k) or, for two leaves, the leaf <v,y>; returns its
    /// name.
    Name add(const Tree& t, const Tree& u, unsigned k);
    ProductAlphabet merged(const ProductAlphabet& other) const;

    /// The canonical projections rho^1 and rho^2.
    TreeHom rho1() const;
    TreeHom rho2() const;
};

struct CanonicalForm {
    ProductAlphabet alphabet;
    TreeHom eta;
    Fta language;

    /// (rho^1, L', rho^2).
    Bimorphism as_bimorphism() const;
};

/// eta_Z(z) = <z phi, z psi>, eta_k(f) = <phi_k(f), psi_k(f)>, L' = eta(L).
CanonicalForm canonical_form(const Bimorphism& b);

/// (rho^1, L'_1 u L'_2, rho^2) over the shared product alphabet.
Bimorphism bimorphism_union(const Bimorphism& b1, const Bimorphism& b2);

struct AlphabeticForm {
    Bimorphism bimorphism;
    TreeHom rho;
};

/// Alphabetic bimorphism (phi_Sigma, rho(L), phi_Delta) over Sigma v Delta
/// with leaves V x Y. Empty V or Y is padded with the leaf "@v" / "@y".
AlphabeticForm to_alphabetic(const Bimorphism& b);

/// Strictly alphabetic bimorphism whose center trees are the rule trees
/// of a finite-state relabeling.
Bimorphism from_finite_state_relabeling(const Transducer& m);

struct CfgProduct {
    Bimorphism bimorphism;
    Fta l1;
    Fta l2;
};

/// Quasi-alphabetic B with yd(tau_B) = L(g1) x L(g2).
CfgProduct from_cfg_product(const Cfg& g1, const Cfg& g2);

struct NonclosureWitness {
    Signature sigma;
    TreeHom psi1;
    TreeHom psi2;
    Fta language;
};

/// Sigma = {f/2, g/1, e/0}, psi1 = id, psi2 swapping the arguments of f,
/// L = {f(g^m(e), g^n(e)) | m, n >= 0}.
NonclosureWitness nonclosure_witness();
/// The diagonal {f(g^n(e), g^n(e))} restricted to height <= h.
TreeSet nonclosure_expected_image(std::size_t h);
/// {t psi1 | t in L, hg(t) <= h, t psi1 = t psi2}: the image of L under the
/// relation psi1 n psi2, by enumeration.
TreeSet intersection_image(const TreeHom& psi1, const TreeHom& psi2, const Fta& language, std::size_t h);

/// phi_0(e) = f(v1, v2), center {e}, psi = id over {e/0}.
Bimorphism qaln_bimorphism();

} // namespace bimorph
