#pragma once

// Seeded generators for the property tests and benchmarks. Everything is
// kept small enough for exhaustive comparison at height 3 to 5.

#include <random>

#include "bimorph/bimorphism.hpp"
#include "bimorph/fta.hpp"
#include "bimorph/hom.hpp"
#include "bimorph/transducer.hpp"

namespace gen {

using namespace bimorph;
using Rng = std::mt19937_64;

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi);
bool coin(Rng& rng, double p = 0.5);

/// Up to `symbols` ranked symbols named "<prefix><i>" with ranks <= max_rank,
/// at least one of them nullary unless `leaves` is non-empty.
Signature random_signature(Rng& rng, const std::string& prefix, std::size_t symbols, unsigned max_rank,
                           const std::vector<std::string>& leaves);

Tree random_tree(const Signature& sig, std::size_t max_height, Rng& rng);

/// Random automaton with `states` states, retried until its language is
/// non-empty.
Fta random_fta(const Signature& sig, std::size_t states, Rng& rng, double density = 0.45);

enum class HomKind { quasi_alphabetic, symbol_to_symbol, strictly_alphabetic, linear };

/// A total homomorphism from `source` of the given kind. Output symbols
/// are "<prefix><rank><a|b>", output leaves `leaves`.
TreeHom random_hom(const Signature& source, HomKind kind, const std::string& prefix,
                   const std::vector<std::string>& leaves, Rng& rng);

/// Quasi-alphabetic bimorphism: at most 3 center symbols and 3 states,
/// phi into "s..." over {v1,v2}, psi into "d..." over {y1,y2}.
Bimorphism random_qa_bimorphism(Rng& rng);

/// Finite-state relabeling over f/2 g/1 a/0 with at most 3 states.
Transducer random_relabeling(Rng& rng);

/// Linear top-down transducer with one-symbol left-hand sides, optional
/// deletion and finite or regular look-ahead.
Transducer random_linear_transducer(Rng& rng);

} // namespace gen
