#pragma once

#include <vector>

#include "sbrw/hodge.hpp"

namespace sbrw {

// Heat kernel of the lower branching walk on oriented d-cells: the powers of
// I - (1-p) Delta_d^- under the weight w_down.
struct LowerHeatKernelSeries {
    double p;
    std::vector<Eigen::MatrixXd> E;
};
LowerHeatKernelSeries exact_lower_kernel(const SimplicialComplex& X, double p, int N);

// Entrywise deviation between the lower kernel at laziness p and the
// normalized lower walk process at p' = p / ((1-p)(M-2) + 1), built from
// B_{p'} = ((p'(M-2)+1)/(M-1)) I - ((1-p')/((M-1)(d+1))) Dtilde_d^- with the
// unweighted lower Laplacian. Requires M = max (d-1)-degree >= 2.
double lower_equivalence_check(const SimplicialComplex& X, double p, int N);

struct LowerHomologyReport {
    bool rows_in_coboundary;  // all rows of E_inf^low inside im delta_d
    int betti_d;
    bool consistent;          // rows_in_coboundary == (betti_d == 0)
    double max_row_distance;
};
// Limit of the lower kernel by spectral projection; requires the spectrum of
// I - (1-p) Delta_d^- inside (-1, 1].
LowerHomologyReport lower_homology_check(const SimplicialComplex& X, double p);

}  // namespace sbrw
