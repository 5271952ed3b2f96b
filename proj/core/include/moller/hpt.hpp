#pragma once

#include "moller/ce.hpp"

#include <memory>

namespace moller {

// A retract of generator complexes lifted to Sym^{<=W}.
struct SymRetract {
    std::shared_ptr<const SymTruncation> big;
    std::shared_ptr<const SymTruncation> small;
    DeformationRetract retract; // I, P, H on the truncations
};

// I = Sym(i), P = Sym(p); H acts on a monomial with t of its factors moved off
// the image of i p by (1/t) times the Leibniz extension of h. Side conditions on
// the generator retract are restored first when they fail.
SymRetract sym_lift_retract(const DeformationRetract& r, int max_weight);
SymRetract sym_lift_retract(const DeformationRetract& r, std::shared_ptr<const SymTruncation> big);

enum class PerturbMode { Strict, DeltaOnly };

struct PerturbCheck {
    int order = 0;
    bool i_chain = true;
    bool p_chain = true;     // strict only
    bool pi_identity = true; // strict only
    bool homotopy = true;    // strict only
    bool square_zero = true;
    bool ok() const { return i_chain && p_chain && pi_identity && homotopy && square_zero; }
};

struct PerturbedRetract {
    SymRetract base;
    FormalGradedMap delta;
    PerturbMode mode = PerturbMode::Strict;
    int max_order = 0;
    // Order 0 of tilde_i, tilde_p, tilde_h holds I, P, H; tilde_delta starts at order 1.
    FormalGradedMap tilde_delta, tilde_i, tilde_p, tilde_h;
    std::vector<PerturbCheck> checks;
    // Number of (dH) factors in the longest word used at each order.
    std::map<int, int> longest_word;
    bool ok() const;
};

// Order by order with A_n = delta_n + sum_{0<j<n} delta_j H A_{n-j}:
// tilde_delta_n = P A_n I, tilde_i_n = H A_n I, tilde_p_n = P A_n H, tilde_h_n = H A_n H.
// DeltaOnly computes A_n I only and skips tilde_p and tilde_h.
PerturbedRetract perturb(const SymRetract& base, const FormalGradedMap& delta, int max_order,
                         PerturbMode mode = PerturbMode::Strict);

struct TransferredCE {
    PerturbedRetract perturbed;
    CEAlgebra small; // delta0 of the small side plus tilde_delta
};

// Dualizes a retract of the field complex, lifts it to the CE truncation and perturbs by delta.
TransferredCE transfer_ce(const CEAlgebra& a, const DeformationRetract& field_retract,
                          PerturbMode mode = PerturbMode::DeltaOnly);

struct TransferredBracket {
    LInftyStructure small;   // arity 2 on the small complex
    SparseMatrix ghost_block; // Sym^2 H^{-1} -> H^{-1}
    bool ghost_nonzero = false;
};

// l~_2(u, v) = p l_2(i u, i v) on the small complex (k = i, q = p).
TransferredBracket transfer_l2(const DeformationRetract& r, const LInftyStructure& l);

enum class NonexistenceVerdict { NonExistence, Inconclusive };

struct NonexistenceEvidence {
    NonexistenceVerdict verdict = NonexistenceVerdict::Inconclusive;
    TransferredBracket transferred;
    // Ordered witness pair in H^{-1} with l~_2(a, b) != 0. An eigen-pair with
    // l~_2(a, b) = mu b is preferred; otherwise the first nonzero pair.
    std::size_t witness_a = 0, witness_b = 0;
    std::string label_a, label_b;
    SparseVec value; // l~_2(a, b) in H^{-1}
    std::optional<Rational> eigenvalue;
};

// Throws DegreeRangeViolated when the complex has a degree below -1.
NonexistenceEvidence nonexistence_certificate(const LInftyStructure& l, const DeformationRetract& r);

std::string to_string(NonexistenceVerdict v);

} // namespace moller
