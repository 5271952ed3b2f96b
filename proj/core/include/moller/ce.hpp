#pragma once

#include "moller/linfty.hpp"

#include <memory>

namespace moller {

// Truncated CE algebra Sym^{<=W+L} F* with delta_CE = delta_0 + sum_n lambda^n delta_n.
// Source weights <= window are exact for every order <= max_order.
struct CEAlgebra {
    CochainComplex generators;                  // (F*, d*)
    std::shared_ptr<const SymTruncation> trunc; // max weight window + max_order
    int window = 0;
    int max_order = 0;
    GeneratorImages delta0_generators;
    std::map<int, GeneratorImages> delta_generators; // order -> images of generators
    GradedMap delta0;
    FormalGradedMap delta;

    const SymTruncation& truncation() const { return *trunc; }
    // delta_n with a zero map for absent orders; delta(0) is delta0.
    PartialMap order(int n) const;
    bool degree_convention_holds(const SpacePtr& fields) const;
};

// Throws JacobiFailed unless check_jacobi passes up to arity min(2A - 1, L + 1).
CEAlgebra build_ce(const LInftyStructure& l, int window, int max_order, bool check = true);

// CE algebra from derivation images on a given generator complex; no Jacobi check.
CEAlgebra ce_from_images(const CochainComplex& generators, const std::map<int, GeneratorImages>& images, int window,
                         int max_order);

struct MCOrderResult {
    int order = 0;
    bool holds = true;
    std::size_t excluded = 0; // columns whose value leaves the truncation
    int witness_degree = 0;
    std::size_t witness_column = 0;
    std::string witness_label;
};

struct MCReport {
    std::vector<MCOrderResult> orders; // order 0 is delta0^2
    bool ok() const;
};

// Order n: d(delta_n) + sum_{0<j<n} delta_j delta_{n-j} = 0 with d(X) = delta0 X + X delta0.
MCReport mc_check(const CEAlgebra& a);

struct CohomologyRow {
    int weight = 0;
    std::size_t full_dim = 0;      // dim Sym^w in this degree
    std::size_t free_dim = 0;      // dim H(delta0)
    std::size_t kernel_dim = 0;    // kernel of the induced order-1 map on H(delta0)
    std::size_t perturbed_dim = 0; // kernel modulo image
    bool excluded = false;         // image would leave the truncation
};

struct CohomologyTable {
    int degree = 0;
    std::vector<CohomologyRow> rows;
    bool filtered_only = false; // higher-order parts present
};

// Throws MCFailed when mc_check fails.
CohomologyTable ce_cohomology(const CEAlgebra& a, int degree, int weight_max);

// Block of a map on a truncation between weight components of two degrees.
SparseMatrix weight_block(const GradedMap& m, const SymTruncation& t, int source_degree, int source_weight,
                          int target_weight);

} // namespace moller
