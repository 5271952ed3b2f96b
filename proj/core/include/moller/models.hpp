#pragma once

#include "moller/linfty.hpp"

namespace moller {

// Cyclic simplicial circle: vertices v0..v{n-1}, edge e_i from v_i to v_{i+1 mod n}.
struct SimplicialCircle {
    int n = 3;
};

// C^0 -> C^1 in degrees 0 and 1 with (d f)(e_i) = f(v_{i+1}) - f(v_i). Throws TooFewVertices for n < 3.
CochainComplex circle_complex(int n);
CochainComplex circle_complex(const SimplicialCircle& c);
// Disjoint union of circles; labels carry a component prefix.
CochainComplex disjoint_circles(const std::vector<int>& sizes);

struct HodgeData {
    CochainComplex complex;
    std::map<int, SparseMatrix> gram;      // per degree, symmetric positive definite
    std::map<int, SparseMatrix> adjoint;   // d*: C^{k+1} -> C^k, stored at k
    std::map<int, SparseMatrix> laplacian; // Delta_k = d*_k d_k + d_{k-1} d*_{k-1}
    std::map<int, SparseMatrix> harmonic;  // i_H: columns span ker Delta_k
    std::map<int, SparseMatrix> projector; // p_H, Gram-orthogonal
    std::map<int, SparseMatrix> green;     // G Delta = Delta G = id - i_H p_H
    DeformationRetract retract;            // i = i_H, p = p_H, h = -G d*
};

// Identity Gram form unless one is given for every nonzero degree.
HodgeData hodge_data(const CochainComplex& c, const std::map<int, SparseMatrix>& gram = {});
DeformationRetract hodge_retract(const CochainComplex& c);

// Basis e, f, h with [h, e] = 2e, [h, f] = -2f, [e, f] = h.
LieAlgebra sl2();
LieAlgebra abelian(std::size_t n);
// Copy of g with c^k_ij (and c^k_ji) overwritten.
LieAlgebra mutated(const LieAlgebra& g, std::size_t i, std::size_t j, std::size_t k, const Rational& c);

struct KGModel {
    LInftyStructure structure;
    std::size_t points = 0;
    int n = 0;
    bool surjective = false;
};

// Fields phi_i in degree 0, antifields in degree 1, d the given k x k matrix and
// l_{N-1} the pointwise product phi_i^{N-1} -> phi‡_i with unit stored coefficient.
// N = 2 gives the linear perturbation phi_i -> phi‡_i at order one.
KGModel kg_toy(std::size_t k, const SparseMatrix& d, int n);

enum class CSVariant { Minimal, Inflated };

struct CSModel {
    LieAlgebra algebra;
    CSVariant variant = CSVariant::Minimal;
    std::size_t acyclic_pairs = 0;
    LInftyStructure minimal;   // g[1] (+) g with the shifted bracket
    LInftyStructure structure; // the model itself
    DeformationRetract retract; // structure.complex() onto minimal.complex()
};

// Inflated: pair j sits in degrees (-1, 0) for even j and (0, 1) for odd j, d a_j = (j + 1) b_j.
// Throws JacobiFailed when g violates Jacobi.
CSModel cs_model(const LieAlgebra& g, CSVariant variant, std::size_t acyclic_pairs = 0);

struct YMModel {
    LieAlgebra algebra;
    int vertices = 0;
    LInftyStructure structure; // only the ghost-ghost part of l_2
    DeformationRetract retract; // Hodge retract onto cohomology
};

// Degree -1: c_{a}@v, degree 0: A_{a}@e then E_{a}@v, degree 1: B_{a}@e.
// d(c) = (d c, 0) and d(A, E) = d E; l_2(c_{a}@v, c_{b}@w) = -delta_{vw} [a, b]@v.
YMModel ym_initial_data_model(const SimplicialCircle& circle, const LieAlgebra& g);

} // namespace moller
