#pragma once

#include "moller/exactlin.hpp"
#include "moller/sym.hpp"

#include <memory>
#include <optional>

namespace moller {

// Finite-dimensional Lie algebra; structure[i][j] holds [e_i, e_j] = sum_k c^k_ij e_k.
struct LieAlgebra {
    std::vector<std::string> labels;
    std::vector<std::vector<SparseVec>> structure;

    std::size_t dim() const { return labels.size(); }
    const SparseVec& bracket(std::size_t i, std::size_t j) const { return structure[i][j]; }
    Rational constant(std::size_t i, std::size_t j, std::size_t k) const;

    bool antisymmetric() const;
    bool jacobi() const;
    bool abelian() const;

    // Zero table of the given labels; set() writes c^k_ij and c^k_ji = -c^k_ij.
    static LieAlgebra zero(std::vector<std::string> labels);
    void set(std::size_t i, std::size_t j, std::size_t k, const Rational& c);
};

// Brackets l_n : Sym^n F -> F of degree +1, stored on canonical monomials with the
// coefficient of the last input weight (l_n(e_m) = m! l_n[., m]). The arity-n bracket
// carries lambda^{n-1}; an optional arity-one term carries lambda^1.
class LInftyStructure {
public:
    LInftyStructure() = default;
    LInftyStructure(CochainComplex complex, int max_arity);

    const CochainComplex& complex() const { return complex_; }
    const SpacePtr& space() const { return complex_.space; }
    int max_arity() const { return max_arity_; }

    const SymPower& power(int n) const;
    // Zero map of the right shape when absent. Arity 1 returns the differential.
    GradedMap bracket(int n) const;
    bool has_bracket(int n) const { return brackets_.count(n) > 0; }
    void set_bracket(int n, GradedMap l);

    const std::optional<GradedMap>& linear_perturbation() const { return linear_; }
    void set_linear_perturbation(GradedMap l);

    // Largest lambda order carried by any term.
    int max_order() const;

private:
    CochainComplex complex_;
    int max_arity_ = 1;
    std::map<int, std::shared_ptr<const SymPower>> powers_;
    std::map<int, GradedMap> brackets_;
    std::optional<GradedMap> linear_;
};

struct JacobiResult {
    int arity = 0;
    bool holds = true;
    // First failing input in canonical order, as generators of F.
    Monomial witness;
    std::string witness_label;
    int order = 0;          // lambda order of the failing part
    int value_degree = 0;
    SparseVec value;        // nonzero value of the identity on the witness
};

struct JacobiReport {
    std::vector<JacobiResult> arities;
    bool ok() const;
};

// Evaluates sum_{i+j=n+1} sum_{shuffles} e(s) l_i(l_j(...), ...) on every basis element of Sym^n.
JacobiReport check_jacobi(const LInftyStructure& l, int up_to_arity);

// CS-type bracket on g[1] (+) g: l_2(c_i, c_j) = -[c_i, c_j] and l_2(c, A) = [A, c].
// A degree-1 copy of g, if present, receives field_coefficient * [A_i, A_j].
// `sym2` is Sym^2 of the complex; degree -1 and 0 must each carry g's basis.
GradedMap shifted_lie_bracket(const LieAlgebra& g, const SymPower& sym2,
                              const Rational& field_coefficient = Rational(0));

// Strict dgla on r.big with l_2 = i o l2_small o (p x p).
LInftyStructure dgla_from_retract(const DeformationRetract& r, const LInftyStructure& small);

} // namespace moller
