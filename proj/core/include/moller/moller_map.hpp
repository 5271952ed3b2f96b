#pragma once

#include "moller/ce.hpp"

namespace moller {

enum class MollerMode { General, Algebra };

// K = sum_n lambda^n K_n on the CE truncation with K_0 = id. In algebra mode the
// generator images are kept and K is their multiplicative extension.
struct MollerCandidate {
    FormalGradedMap K;
    MollerMode mode = MollerMode::General;
    std::vector<GeneratorImages> generator_images; // algebra mode: images_by_order
};

MollerCandidate identity_candidate(const CEAlgebra& a);
MollerCandidate algebra_candidate(const CEAlgebra& a, std::vector<GeneratorImages> images_by_order);

struct MollerOrderCheck {
    int order = 0;
    bool holds = true;
    std::size_t excluded = 0;
    int witness_degree = 0;
    std::size_t witness_column = 0;
    std::string witness_label;
};

struct MollerVerification {
    std::vector<MollerOrderCheck> orders;
    bool verified() const;
};

// Order n of (delta0 + delta) K - K delta0, checked on columns of source weight <= window.
MollerVerification verify_moller(const CEAlgebra& a, const MollerCandidate& k);

// s : (F*)^0 -> (F*)^{-1} with s delta0 = id on (F*)^{-1}, or nullopt when none exists.
std::optional<GradedMap> find_splitting(const CEAlgebra& a);

// K(phi) = phi + delta(s(phi)) on degree-0 generators, K = id on degree -1, extended multiplicatively.
MollerCandidate moller_from_splitting(const CEAlgebra& a, const GradedMap& s);

enum class OrderStatus { Solved, Obstructed, OverflowLimited };

struct ObstructionCertificate {
    int source_weight = 0;
    int target_weight = 0;
    Monomial source_monomial;             // a column where the functional sees the right-hand side
    // Functional on the equation space: one matrix per source degree k,
    // rows indexed by (k+1, target_weight), columns by (k, source_weight).
    std::map<int, SparseMatrix> functional;
    std::map<int, SparseMatrix> rhs;      // the right-hand side block, same layout
    Rational pairing;                     // functional(rhs), nonzero
};

struct OrderReport {
    int order = 0;
    OrderStatus status = OrderStatus::Solved;
    GradedMap K;                          // when solved
    std::optional<ObstructionCertificate> certificate;
    bool rhs_closed = true;
    std::size_t blocks_solved = 0;
    std::size_t blocks_skipped = 0;       // zero right-hand side
};

enum class TowerVerdict { ExistsUpTo, ObstructedAtOrder, Inconclusive };

struct ObstructionReport {
    int window = 0;
    int max_order = 0;
    std::vector<OrderReport> orders;
    TowerVerdict verdict = TowerVerdict::ExistsUpTo;
    int obstructed_order = 0;
};

// Solves d(K_n) = -sum_{j=1}^n delta_j K_{n-j} order by order on source weights <= window.
// Throws MCFailed when mc_check fails.
ObstructionReport obstruction_tower(const CEAlgebra& a, int max_order, int window);

// General-mode candidate assembled from the solved orders of a report.
MollerCandidate candidate_from_report(const CEAlgebra& a, const ObstructionReport& report);

// Independent check of a certificate against delta0: the functional annihilates
// the image of d and pairs nonzero with the right-hand side.
bool certificate_valid(const CEAlgebra& a, const ObstructionCertificate& c);

std::string to_string(TowerVerdict v);
std::string to_string(OrderStatus s);

} // namespace moller
