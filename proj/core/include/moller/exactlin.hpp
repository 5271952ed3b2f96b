#pragma once

#include "moller/elimination.hpp"
#include "moller/errors.hpp"
#include "moller/graded.hpp"

#include <optional>
#include <string>

namespace moller {

bool verify_complex(const CochainComplex& c);

struct Cohomology {
    std::size_t dimension = 0;
    std::vector<SparseVec> representatives;
    std::vector<std::string> labels; // "[x]" where x labels the free column of the representative
};

Cohomology cohomology(const CochainComplex& c, int degree);

struct SolveCertificate {
    int degree = 0;          // degree in the common target of A and B
    std::size_t column = 0;  // source basis index of B where f(B) != 0
    SparseVec functional;    // f with f A = 0
};

struct LinearSolution {
    std::optional<GradedMap> x;
    std::optional<SolveCertificate> certificate;
    bool solved() const { return x.has_value(); }
};

// Solves a ∘ x = b for x. a: U -> V with shift s, b: S -> V with shift t,
// x: S -> U with shift t - s.
LinearSolution solve_linear(const GradedMap& a, const GradedMap& b);

struct DeformationRetract {
    CochainComplex big;
    CochainComplex small;
    GradedMap i; // small -> big
    GradedMap p; // big -> small
    GradedMap h; // big -> big, degree -1
};

struct RetractCheck {
    bool i_chain = false;
    bool p_chain = false;
    bool pi_identity = false;
    bool homotopy = false; // d h + h d == i p - id
    bool hi_zero = false;
    bool ph_zero = false;
    bool hh_zero = false;

    bool ok() const { return i_chain && p_chain && pi_identity && homotopy; }
    bool side_conditions() const { return hi_zero && ph_zero && hh_zero; }
    std::string describe() const;
};

RetractCheck check_retract(const DeformationRetract& r);
// Throws RetractInvariantsFailed if the identities (and optionally side conditions) fail.
void require_retract(const DeformationRetract& r, bool side_conditions = false);

DeformationRetract identity_retract(const CochainComplex& c);
DeformationRetract retract_to_cohomology(const CochainComplex& c);

// outer: mid <-> big, inner: small <-> mid. Result: small <-> big with
// h = h_outer + i_outer h_inner p_outer. Side conditions are restored only
// when `normalize` is set.
DeformationRetract compose_retracts(const DeformationRetract& outer, const DeformationRetract& inner,
                                    bool normalize = false);

// h -> pi h pi with pi = id - i p, followed by h -> -h d h.
DeformationRetract normalize_side_conditions(const DeformationRetract& r);

// Gaussian elimination of the pair (a, b) with d a = alpha b + ..., alpha != 0,
// where a is basis index `col` of degree k and b is index `row` of degree k+1.
DeformationRetract cancel_pair(const CochainComplex& c, int degree, std::size_t row, std::size_t col);

std::string dual_label(const std::string& label);
// Appends primes to repeated labels, keeping the first occurrence unchanged.
void make_labels_unique(std::vector<std::string>& labels);
SpacePtr dual_space(const SpacePtr& v);

// Transpose of a degree-s map with the Koszul sign (-1)^{s |xi|} on a dual
// element xi of the target.
GradedMap dual_map(const GradedMap& f, const SpacePtr& dual_source, const SpacePtr& dual_target);

// d*(xi) = -(-1)^{|xi|} xi o d, the internal hom differential of hom(V, K).
CochainComplex dual_complex(const CochainComplex& c);

// Transposed retract onto the dual small complex: i* = p^T, p* = i^T,
// h*(xi) = (-1)^{|xi|} xi o h.
DeformationRetract dual_retract(const DeformationRetract& r);

} // namespace moller
