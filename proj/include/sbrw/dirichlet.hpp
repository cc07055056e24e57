#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sbrw/hodge.hpp"

namespace sbrw {

// Boundary data for the high-dimensional Dirichlet problem: values of an
// antisymmetric form on a nonempty proper subset A of the (d-1)-cells.
struct BoundaryData {
    std::vector<Cell> A;
    std::vector<std::pair<OrientedCell, double>> f;  // values on A (any orientation)
};

// Block decomposition of Delta^+ relative to A: the restriction to rows and
// columns outside A and the coupling block Q = -Delta^+[complement rows, A
// columns] (Q(s',s'') = 1/deg(s') when s'' ~ s').
struct RestrictedLaplacian {
    std::vector<int> inside;   // canonical indices of X^{d-1} \ A
    std::vector<int> boundary; // canonical indices of A
    Eigen::MatrixXd L;         // Delta^+ restricted to inside x inside
    Eigen::MatrixXd Q;         // inside x boundary coupling block
};

RestrictedLaplacian restrict_laplacian(const SimplicialComplex& X, const std::vector<Cell>& A);

struct InvertibilityReport {
    bool invertible;
    double smallest_sv;
    double largest_sv;
    // kernel vector of Delta^+_{X\A} when singular; its zero-extension lies in
    // ker delta_d and witnesses the failure
    std::optional<Eigen::VectorXd> witness;
};
InvertibilityReport is_invertible(const SimplicialComplex& X, const std::vector<Cell>& A);

struct ExhaustiveReport {
    bool exhaustive;
    // generations of the greedy closure, starting from A itself
    std::vector<std::vector<Cell>> sequence;
};
// Greedy closure: add every missing cell that completes a coface whose other
// faces are already in the set; exhaustive iff all of X^{d-1} is reached.
ExhaustiveReport check_exhaustive(const SimplicialComplex& X, const std::vector<Cell>& A);

// True iff some (d-2)-cell has all its cofaces outside A; then delta_{d-1}
// of its Dirac form witnesses non-invertibility. Requires d >= 2.
bool check_open_hinge(const SimplicialComplex& X, const std::vector<Cell>& A);

// Green function of the A-absorbing walk, normalized as (1-p) times the
// inverse of the restricted Laplacian, so (1/(1-p)) G Delta^+_{X\A} = I.
// Requires (d-1)/(d+1) < p < 1 and an invertible restriction.
struct GreenFunction {
    double p;
    RestrictedLaplacian blocks;
    Eigen::MatrixXd G;  // inside x inside
};
GreenFunction green_function(const SimplicialComplex& X, const std::vector<Cell>& A, double p);

// The absorbing return series sum_n E_A[D_n], equal to (1/(1-p)) times the
// inverse restricted Laplacian; this is what the Monte-Carlo estimator sees.
Eigen::MatrixXd absorbing_sum_exact(const SimplicialComplex& X, const std::vector<Cell>& A,
                                    double p);

struct DirichletSolution {
    Form F;                 // on all of X^{d-1}
    double residual;        // max |Delta^+ F| over cells outside A
    double solver_gap;      // max difference between the Green-function route
                            // and the direct block solve
};

// Unique solution of Delta^+ F = 0 outside A, F = f on A. Throws (with the
// invertibility diagnostics in the message) when the restriction is singular.
DirichletSolution solve_dirichlet(const SimplicialComplex& X, const BoundaryData& bd, double p);

}  // namespace sbrw
