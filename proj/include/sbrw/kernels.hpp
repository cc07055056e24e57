#pragma once

#include <string>
#include <vector>

#include "sbrw/hodge.hpp"
#include "sbrw/operators.hpp"

namespace sbrw {

// Oriented-cell slot numbering used by kernels and the simulator: for d >= 2
// a canonical (d-1)-cell i occupies slots 2i (+) and 2i+1 (-); for d = 1
// vertices have a single slot i.
inline int n_slots(const SimplicialComplex& X, int j) {
    return j == 0 ? X.n_cells(j) : 2 * X.n_cells(j);
}
inline int slot_of(const SimplicialComplex& X, int j, int cell_idx, int sign) {
    (void)X;
    return j == 0 ? cell_idx : 2 * cell_idx + (sign < 0 ? 1 : 0);
}

// Heat kernel of the effective branching walk: E[n](i,j) = E_n(sigma_i, sigma_j)
// on canonical (d-1)-cells, i.e. the n-th power of the transition operator
// acting on the first coordinate.
struct HeatKernelSeries {
    double p;
    std::vector<Eigen::MatrixXd> E;  // length N+1, E[0] = I
};
HeatKernelSeries exact_heat_kernel(const SimplicialComplex& X, double p, int N);

// Column evolution E_n(., target): cheap on large complexes (sparse matvec).
std::vector<Eigen::VectorXd> heat_column_series(const SimplicialComplex& X, double p,
                                                const OrientedCell& target, int N);

// Normalized expectation process of the (d-1)-walk: ((d/(p(d-1)+1)) A_p^T)^n.
std::vector<Eigen::MatrixXd> walk_expectation(const SimplicialComplex& X, double p, int N);

// First-visit kernels F_n(., target) for n = 1..N via the restricted product
// formula: one-step matrices with the target row/column removed at
// intermediate times.
struct FirstVisitSeries {
    double p;
    OrientedCell target;
    std::vector<Eigen::VectorXd> F;  // F[n-1] = F_n(., target)
};
FirstVisitSeries first_visit_kernel(const SimplicialComplex& X, double p,
                                    const OrientedCell& target, int N);

// One-step expectation matrix over oriented slots (nonnegative entries):
// M(s,t) = E^s[N_1(t)].
Eigen::SparseMatrix<double> oriented_one_step(const SimplicialComplex& X, double p);

// E^sigma[K_n(sigma')], the expected number of first visits (unsigned).
double expected_first_visits(const SimplicialComplex& X, double p, const OrientedCell& sigma,
                             const OrientedCell& target, int n);

// Truncated return series G(z) = sum E_n(s,s) z^n and F(z) = sum F_n(s,s) z^n
// together with the coefficientwise residual of (1 - F) G = 1.
struct GeneratingFunctions {
    std::vector<double> G;     // G[0..N]
    std::vector<double> Fcal;  // Fcal[0..N], Fcal[0] = 0
    double max_identity_residual;
};
GeneratingFunctions generating_functions(const SimplicialComplex& X, double p,
                                         const OrientedCell& sigma, int N);

// Limit kernel E_inf via the spectral projection of the transition operator
// onto eigenvalue one. Requires p > (d-1)/(d+1), or equality with no
// disorientable (d-1)-component; refuses otherwise.
Eigen::MatrixXd limit_kernel(const SimplicialComplex& X, double p);

// dim Span{ Proj_{Z_{d-1}} E_inf(sigma,.) }; equals the (d-1)-Betti number.
int homology_dim_from_kernel(const SimplicialComplex& X, double p);

// Decay of dist(E_n, B^{d-1}) against the rate 1 - (1-p) lambda_{d-1}.
struct ConvergenceReport {
    bool applicable;        // false when H_{d-1} != 0 (distance cannot vanish)
    std::string note;
    double lambda;
    double rate;            // 1 - (1-p) lambda
    std::vector<double> dist;  // per n, max over rows of the w-norm distance
    double slope;           // fitted log-slope over the window
    double max_ratio;       // max dist_n / rate^n over the window
    bool bound_ok;
};
ConvergenceReport convergence_rate_check(const SimplicialComplex& X, double p, int N,
                                         int window_lo = -1, int window_hi = -1);

// Partial sums of the return kernel and the closed spectral-integral value
// (1/(1-p)) * int 1/(1-x) dmu0 for the spectral measure of the Dirac form.
struct RecurrenceReport {
    std::vector<double> partial_sums;  // S_0..S_N
    double mass_at_one;                // mu0({1})
    bool divergent;
    double integral;                   // finite value when not divergent
};
RecurrenceReport recurrence_sum(const SimplicialComplex& X, const OrientedCell& sigma, double p,
                                int N);

}  // namespace sbrw
