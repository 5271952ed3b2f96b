#pragma once

#include "moller/hpt.hpp"
#include "moller/models.hpp"
#include "moller/moller_map.hpp"

#include <random>

namespace moller::testing {

inline Rational q(long p, long d = 1) { return make_rational(p, d); }

SparseMatrix dense(std::initializer_list<std::initializer_list<long>> rows);

// Small random rationals with numerators in [-range, range] and denominators in [1, den].
Rational random_rational(std::mt19937& rng, int range = 3, int den = 2);
SparseMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, double density = 0.6);
SparseMatrix random_invertible(std::mt19937& rng, std::size_t n);

// Direct sum of cohomology and acyclic pairs in degrees [lo, hi], conjugated by random
// invertible matrices in each degree. Total dimension at most max_dim.
CochainComplex random_complex(std::mt19937& rng, std::size_t max_dim, int lo = -1, int hi = 2);

// Random symmetric positive definite Gram forms B^T B + I per degree.
std::map<int, SparseMatrix> random_gram(std::mt19937& rng, const SpacePtr& s);

// Brute-force Lie algebra cohomology H^q(g, Sym^m g*) with the coadjoint action,
// on alternating cochains, with its own dense elimination.
std::size_t lie_cohomology_dim(const LieAlgebra& g, int q, int m);
// dim (Sym^w g*)^g from the stacked coadjoint action matrices.
std::size_t coadjoint_invariants(const LieAlgebra& g, int w);

// Conjugates the CE differential of l by exp-free automorphism x -> x + q(x) with
// q random, quadratic and degree preserving, and returns the undualized structure up to
// the given arity. The result satisfies homotopy Jacobi whenever l does.
LInftyStructure conjugated_structure(std::mt19937& rng, const LInftyStructure& l, int arity);

// Random Lie algebra from a basis change of a direct sum of sl2 and abelian factors.
LieAlgebra random_lie_algebra(std::mt19937& rng);

struct RandomModel {
    std::string description;
    LInftyStructure structure;
};

// KG toys with random (possibly singular) mass matrices, CS models of random Lie
// algebras in both variants, and random conjugates of those.
RandomModel random_tower_model(std::mt19937& rng);

struct RetractCase {
    std::size_t total_dim = 0;
    bool cohomology = false;
    bool hodge = false;       // retract identities
    bool hodge_green = false; // G Delta = id - i_H p_H and [G, d] = 0
    bool composed = false;
    bool sym = false;
    bool ok() const { return cohomology && hodge && hodge_green && composed && sym; }
};

// One random complex of total dimension at most max_dim through every retract construction.
RetractCase retract_case(std::mt19937& rng, std::size_t max_dim);

struct StabilityCase {
    ObstructionReport low;
    ObstructionReport high;
    bool same_verdict = false;
    bool same_order = false;
    bool certificates_clean = false; // no certificate on any solved order
    bool ok() const { return same_verdict && same_order && certificates_clean; }
};

// Runs the tower at (window, order) and (window + 2, order) on separately built algebras.
StabilityCase tower_stability(const LInftyStructure& l, int window, int order);

} // namespace moller::testing
