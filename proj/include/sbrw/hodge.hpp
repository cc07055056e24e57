#pragma once

#include <optional>

#include "sbrw/operators.hpp"

namespace sbrw {

// Relative rank / kernel threshold used throughout: singular values (or
// eigenvalues) below 1e-8 times the largest count as zero.
inline constexpr double kRankTol = 1e-8;

struct HodgeDecomposition {
    int k;
    Form b;  // in B_k = im partial_{k+1}
    Form h;  // harmonic, ker Delta_k
    Form c;  // in B^k = im delta_k
    double residual;  // ||f - b - h - c|| relative to ||f||
};

// Orthogonal (w-inner product) decomposition f = b + h + c.
HodgeDecomposition hodge_decompose(const SimplicialComplex& X, const Form& f,
                                   const WeightFunction& w);

// dim ker Delta_k. With the empty cell materialized these are reduced Betti
// numbers: betti(X,0) counts components minus one. Valid for -1 <= k <= d.
// Kernel dimensions are weight-independent; w_up is the default basis.
int betti(const SimplicialComplex& X, int k);
int betti(const SimplicialComplex& X, int k, const WeightFunction& w);

// Spectral gap lambda_k: smallest eigenvalue of Delta_k^+ restricted to
// Z_k = ker partial_k (the complement of its trivial kernel B^k).
double spectral_gap(const SimplicialComplex& X, int k, const WeightFunction& w);
double spectral_gap(const SimplicialComplex& X, int k);

// w-orthogonal projection onto Z_k = ker partial_k = (B^k)^perp.
Form project_Z(const SimplicialComplex& X, const Form& f, int k, const WeightFunction& w);

// w-orthogonal projection onto B^k = im delta_k.
Form project_B_up(const SimplicialComplex& X, const Form& f, int k, const WeightFunction& w);

struct EigenvalueOneReport {
    bool found;                 // 1 in Spec(A_0) within tolerance
    bool hypothesis_met;        // max (d-1)-degree <= d
    double closest_eigenvalue;
    std::optional<Form> witness;
};

// Numerical probe of whether one is an eigenvalue of A_0 = I - Delta^+.
// Reports only; asserts nothing when the degree hypothesis fails.
EigenvalueOneReport check_eigenvalue_one(const SimplicialComplex& X, double tol = 1e-8);

// Orthonormal basis (in W^{1/2}-coordinates) of the column space of M.
Eigen::MatrixXd image_basis_sym(const Eigen::MatrixXd& M_sym, double tol = kRankTol);

}  // namespace sbrw
