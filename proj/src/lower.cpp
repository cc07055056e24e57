#include "sbrw/lower.hpp"

#include <stdexcept>

namespace sbrw {

LowerHeatKernelSeries exact_lower_kernel(const SimplicialComplex& X, double p, int N) {
    Eigen::MatrixXd T = transition_down(X, p).dense();
    LowerHeatKernelSeries out;
    out.p = p;
    out.E.reserve(N + 1);
    out.E.push_back(Eigen::MatrixXd::Identity(T.rows(), T.cols()));
    for (int n = 1; n <= N; ++n) out.E.push_back(T * out.E.back());
    return out;
}

double lower_equivalence_check(const SimplicialComplex& X, double p, int N) {
    int d = X.dim();
    int M = X.max_degree(d - 1);
    if (M < 2)
        throw std::invalid_argument("lower_equivalence_check needs max (d-1)-degree >= 2");
    double pp = p / ((1.0 - p) * (M - 2) + 1.0);
    Eigen::MatrixXd Dt = lower_laplacian(X, d, WeightFunction::uniform(X)).dense();
    int n = X.n_cells(d);
    Eigen::MatrixXd Bp = ((pp * (M - 2) + 1.0) / (M - 1.0)) *
                             Eigen::MatrixXd::Identity(n, n) -
                         ((1.0 - pp) / ((M - 1.0) * (d + 1.0))) * Dt;
    double scale = (M - 1.0) / (pp * (M - 2) + 1.0);  // per-step normalization
    Eigen::MatrixXd step_norm = scale * Bp;

    Eigen::MatrixXd T = transition_down(X, p).dense();
    Eigen::MatrixXd lhs = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd rhs = lhs;
    double worst = 0.0;
    for (int s = 1; s <= N; ++s) {
        lhs = T * lhs;
        rhs = step_norm * rhs;
        worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
    return worst;
}

LowerHomologyReport lower_homology_check(const SimplicialComplex& X, double p) {
    int d = X.dim();
    WeightFunction w = WeightFunction::w_down(X);
    Eigen::MatrixXd T = transition_down(X, p).dense();
    auto es = weighted_eigensolve(T, weight_vector(X, w, d));
    if (es.eigenvalues.size() && es.eigenvalues[0] <= -1.0 + 1e-10)
        throw std::invalid_argument(
            "lower limit kernel does not exist: spectrum reaches -1 at this laziness");
    Eigen::MatrixXd Einf = spectral_projector(es, 1.0, 1e-8);

    // distance of each row to B^d = im delta_d in the w_down geometry
    Eigen::VectorXd wd = weight_vector(X, w, d);
    Eigen::VectorXd ws = wd.cwiseSqrt();
    Eigen::MatrixXd Ds = ws.asDiagonal() * coboundary(X, d).dense();
    Eigen::MatrixXd Q = image_basis_sym(Ds);
    LowerHomologyReport rep;
    rep.max_row_distance = 0.0;
    for (int i = 0; i < Einf.rows(); ++i) {
        Eigen::VectorXd g = ws.cwiseProduct(Einf.row(i).transpose());
        Eigen::VectorXd off = g - Q * (Q.transpose() * g);
        rep.max_row_distance = std::max(rep.max_row_distance, off.norm());
    }
    rep.rows_in_coboundary = rep.max_row_distance <= 1e-8;
    rep.betti_d = betti(X, d);
    rep.consistent = rep.rows_in_coboundary == (rep.betti_d == 0);
    return rep;
}

}  // namespace sbrw
