#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "sbrw/complex.hpp"
#include "sbrw/forms.hpp"

namespace sbrw {

// A linear map between form spaces in the canonical cell bases. Rows are
// indexed by codomain cells, columns by domain cells.
struct CellOperator {
    int domain_dim = 0;
    int codomain_dim = 0;
    Eigen::SparseMatrix<double> mat;

    Eigen::MatrixXd dense() const { return Eigen::MatrixXd(mat); }
    Form apply(const Form& f) const { return Form(codomain_dim, mat * f.values); }
};

// delta_k : Omega^{k-1} -> Omega^k, (delta f)(sigma) = sum_i (-1)^i f(sigma\i).
// Entries are exact signed integers. Valid for 0 <= k <= d+1 (k = d+1 gives
// the zero map out of Omega^d).
CellOperator coboundary(const SimplicialComplex& X, int k);

// partial_k : Omega^k -> Omega^{k-1}, the w-adjoint of delta_k.
CellOperator boundary(const SimplicialComplex& X, int k, const WeightFunction& w);

// Laplacians as operator products: up = boundary(k+1) coboundary(k+1),
// down = coboundary(k) boundary(k).
CellOperator upper_laplacian(const SimplicialComplex& X, int k, const WeightFunction& w);
CellOperator lower_laplacian(const SimplicialComplex& X, int k, const WeightFunction& w);
CellOperator full_laplacian(const SimplicialComplex& X, int k, const WeightFunction& w);

// The same Laplacians assembled from the explicit coefficient formulas
// (neighbor sums); used to cross-check the products. k >= 1 for the lower
// one (the adjacency relation starts at edges).
CellOperator upper_laplacian_coeff(const SimplicialComplex& X, int k, const WeightFunction& w);
CellOperator lower_laplacian_coeff(const SimplicialComplex& X, int k, const WeightFunction& w);

// Branching-walk transition operator on Omega^{d-1}:
//   A_p = I - (1-p) Delta^+ (w_up),  (A_p f)(s) = p f(s) + (1-p)/deg(s) sum f(s').
// Requires every (d-1)-cell to have degree >= 1.
CellOperator transition_up(const SimplicialComplex& X, double p);

// (d-1)-walk operator: (A_p f)(s) = p f(s) + (1-p)/d sum f(s')/deg(s').
CellOperator transition_walk(const SimplicialComplex& X, double p);

// Lower transition operator on Omega^d: I - (1-p) Delta_d^- (w_down).
CellOperator transition_down(const SimplicialComplex& X, double p);

// --- spectral helpers ----------------------------------------------------
//
// Operators above are self-adjoint under the w-inner product; eigensolves go
// through the similarity transform W^{1/2} A W^{-1/2}, which is symmetric.

struct WeightedEigen {
    Eigen::VectorXd eigenvalues;      // ascending
    Eigen::MatrixXd vectors_sym;      // orthonormal eigenvectors of the symmetrized matrix
    Eigen::VectorXd w_sqrt;           // diag of W^{1/2}
    // eigenvector in the original (form) coordinates
    Eigen::VectorXd form_vector(int i) const {
        return vectors_sym.col(i).cwiseQuotient(w_sqrt);
    }
};

// Dense symmetric eigensolve of A (w-self-adjoint, given in cell basis).
// Sizes beyond `dense_limit` are refused; all flows needing full spectra run
// at desk scale, large complexes use the matrix-free paths.
WeightedEigen weighted_eigensolve(const Eigen::MatrixXd& A, const Eigen::VectorXd& w,
                                  int dense_limit = 5000);

// Spectral projector of A onto the eigenvalue-lambda eigenspace (w-orthogonal),
// returned in the cell basis.
Eigen::MatrixXd spectral_projector(const WeightedEigen& es, double lambda, double tol = 1e-8);

}  // namespace sbrw
