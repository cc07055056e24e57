#include "sbrw/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace sbrw {

namespace {

int checked_index(const SimplicialComplex& X, const OrientedCell& sigma, int expect_dim) {
    if (sigma.dim() != expect_dim)
        throw std::invalid_argument("cell has dimension " + std::to_string(sigma.dim()) +
                                    ", expected " + std::to_string(expect_dim));
    int i = X.index_of(sigma.cell);
    if (i < 0) throw std::invalid_argument("cell not in complex: " + sigma.cell.str());
    return i;
}

double lazy_threshold(const SimplicialComplex& X) {
    return static_cast<double>(X.dim() - 1) / (X.dim() + 1);
}

void check_limit_precondition(const SimplicialComplex& X, double p) {
    double thr = lazy_threshold(X);
    if (p > thr + 1e-12) return;
    if (std::abs(p - thr) <= 1e-12) {
        if (!X.has_disorientable_component(X.dim() - 1)) return;
        throw std::invalid_argument(
            "limit kernel does not exist: p equals (d-1)/(d+1) and the complex has a "
            "disorientable (d-1)-component (eigenvalue -1 of the transition operator)");
    }
    throw std::invalid_argument("limit kernel requires p > (d-1)/(d+1) = " + std::to_string(thr));
}

}  // namespace

HeatKernelSeries exact_heat_kernel(const SimplicialComplex& X, double p, int N) {
    Eigen::MatrixXd A = transition_up(X, p).dense();
    HeatKernelSeries out;
    out.p = p;
    out.E.reserve(N + 1);
    out.E.push_back(Eigen::MatrixXd::Identity(A.rows(), A.cols()));
    for (int n = 1; n <= N; ++n) out.E.push_back(A * out.E.back());
    return out;
}

std::vector<Eigen::VectorXd> heat_column_series(const SimplicialComplex& X, double p,
                                                const OrientedCell& target, int N) {
    int k = X.dim() - 1;
    int i = checked_index(X, target, k);
    Eigen::SparseMatrix<double> A = transition_up(X, p).mat;
    Eigen::VectorXd v = Eigen::VectorXd::Zero(X.n_cells(k));
    v[i] = k == 0 ? 1.0 : target.sign;
    std::vector<Eigen::VectorXd> out;
    out.reserve(N + 1);
    out.push_back(v);
    for (int n = 1; n <= N; ++n) {
        v = A * v;
        out.push_back(v);
    }
    return out;
}

std::vector<Eigen::MatrixXd> walk_expectation(const SimplicialComplex& X, double p, int N) {
    int d = X.dim();
    double c = static_cast<double>(d) / (p * (d - 1) + 1.0);
    Eigen::MatrixXd B = c * transition_walk(X, p).dense().transpose();
    std::vector<Eigen::MatrixXd> out;
    out.reserve(N + 1);
    out.push_back(Eigen::MatrixXd::Identity(B.rows(), B.cols()));
    for (int n = 1; n <= N; ++n) out.push_back(B * out.back());
    return out;
}

FirstVisitSeries first_visit_kernel(const SimplicialComplex& X, double p,
                                    const OrientedCell& target, int N) {
    int k = X.dim() - 1;
    int ti = checked_index(X, target, k);
    double tsign = k == 0 ? 1.0 : target.sign;
    Eigen::SparseMatrix<double> A = transition_up(X, p).mat;
    FirstVisitSeries out{p, target, {}};
    if (N < 1) return out;
    Eigen::VectorXd f = Eigen::VectorXd::Zero(X.n_cells(k));
    f[ti] = tsign;
    f = A * f;  // F_1(., target) is the one-step expectation column
    out.F.push_back(f);
    for (int n = 2; n <= N; ++n) {
        Eigen::VectorXd g = out.F.back();
        g[ti] = 0.0;  // ancestors must avoid the target cell (both orientations)
        out.F.push_back(A * g);
    }
    return out;
}

Eigen::SparseMatrix<double> oriented_one_step(const SimplicialComplex& X, double p) {
    int k = X.dim() - 1;
    int m = X.n_cells(k);
    int ns = n_slots(X, k);
    std::vector<Eigen::Triplet<double>> trips;
    for (int i = 0; i < m; ++i) {
        int dg = X.deg(k, i);
        if (dg < 1)
            throw std::invalid_argument("oriented_one_step: zero-degree cell " +
                                        X.cell(k, i).str());
        for (int sgn : {1, -1}) {
            if (k == 0 && sgn < 0) continue;
            int from = slot_of(X, k, i, sgn);
            trips.emplace_back(from, from, p);
            for (int cf : X.cofaces(k, i))
                for (auto [nb, s] : X.neighbors_in_coface(k, i, cf)) {
                    int to = slot_of(X, k, nb, k == 0 ? 1 : s * sgn);
                    trips.emplace_back(from, to, (1.0 - p) / dg);
                }
        }
    }
    Eigen::SparseMatrix<double> M(ns, ns);
    M.setFromTriplets(trips.begin(), trips.end());
    return M;
}

double expected_first_visits(const SimplicialComplex& X, double p, const OrientedCell& sigma,
                             const OrientedCell& target, int n) {
    int k = X.dim() - 1;
    int si = checked_index(X, sigma, k);
    int ti = checked_index(X, target, k);
    if (n <= 0) return 0.0;
    Eigen::SparseMatrix<double> M = oriented_one_step(X, p);
    int from = slot_of(X, k, si, k == 0 ? 1 : sigma.sign);
    int to_plus = slot_of(X, k, ti, k == 0 ? 1 : target.sign);
    int to_minus = slot_of(X, k, ti, k == 0 ? 1 : -target.sign);
    // v_n(s) = E^s[K_n(target)]; intermediates avoid both orientations
    Eigen::VectorXd v = Eigen::VectorXd::Zero(M.rows());
    v[to_plus] = 1.0;
    v = M * v;
    for (int step = 2; step <= n; ++step) {
        Eigen::VectorXd g = v;
        g[to_plus] = 0.0;
        if (k != 0) g[to_minus] = 0.0;
        v = M * g;
    }
    return v[from];
}

GeneratingFunctions generating_functions(const SimplicialComplex& X, double p,
                                         const OrientedCell& sigma, int N) {
    int k = X.dim() - 1;
    int si = checked_index(X, sigma, k);
    auto cols = heat_column_series(X, p, sigma, N);
    auto fv = first_visit_kernel(X, p, sigma, N);
    double s = (k == 0) ? 1.0 : sigma.sign;
    GeneratingFunctions out;
    out.G.resize(N + 1);
    out.Fcal.assign(N + 1, 0.0);
    for (int n = 0; n <= N; ++n) out.G[n] = s * cols[n][si];
    for (int n = 1; n <= N; ++n) out.Fcal[n] = s * fv.F[n - 1][si];
    double res = 0.0;
    for (int n = 0; n <= N; ++n) {
        double conv = 0.0;
        for (int j = 1; j <= n; ++j) conv += out.Fcal[j] * out.G[n - j];
        double lhs = out.G[n] - conv;  // coefficient of (1 - F) G
        res = std::max(res, std::abs(lhs - (n == 0 ? 1.0 : 0.0)));
    }
    out.max_identity_residual = res;
    return out;
}

Eigen::MatrixXd limit_kernel(const SimplicialComplex& X, double p) {
    check_limit_precondition(X, p);
    int k = X.dim() - 1;
    WeightFunction w = WeightFunction::w_up(X);
    auto es = weighted_eigensolve(transition_up(X, p).dense(), weight_vector(X, w, k));
    return spectral_projector(es, 1.0, 1e-8);
}

int homology_dim_from_kernel(const SimplicialComplex& X, double p) {
    int k = X.dim() - 1;
    WeightFunction w = WeightFunction::w_up(X);
    Eigen::MatrixXd Einf = limit_kernel(X, p);
    int m = X.n_cells(k);
    Eigen::MatrixXd rows(m, m);
    for (int i = 0; i < m; ++i) {
        Form r(k, Einf.row(i).transpose());
        rows.row(i) = project_Z(X, r, k, w).values.transpose();
    }
    if (rows.norm() == 0.0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows);
    const auto& sv = svd.singularValues();
    // threshold against the scale of E_inf itself (operator norm 1): the
    // projected rows can be uniformly at roundoff level when H_{d-1} = 0
    double cut = kRankTol * std::max(sv.size() ? sv[0] : 0.0, 1.0);
    int r = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv[i] > cut) ++r;
    return r;
}

ConvergenceReport convergence_rate_check(const SimplicialComplex& X, double p, int N,
                                         int window_lo, int window_hi) {
    int d = X.dim();
    int k = d - 1;
    if (p + 1e-12 < static_cast<double>(d) / (d + 1))
        throw std::invalid_argument("convergence_rate_check requires p >= d/(d+1)");
    ConvergenceReport rep;
    rep.lambda = spectral_gap(X, k);
    rep.rate = 1.0 - (1.0 - p) * rep.lambda;
    if (betti(X, k) > 0) {
        rep.applicable = false;
        rep.note = "H_{d-1} is nontrivial: dist(E_n, B^{d-1}) does not vanish; check skipped";
        rep.slope = 0.0;
        rep.max_ratio = 0.0;
        rep.bound_ok = true;
        return rep;
    }
    rep.applicable = true;

    WeightFunction w = WeightFunction::w_up(X);
    Eigen::VectorXd wk = weight_vector(X, w, k);
    Eigen::VectorXd ws = wk.cwiseSqrt();
    Eigen::MatrixXd Ds = ws.asDiagonal() * coboundary(X, k).dense();
    Eigen::MatrixXd Q = image_basis_sym(Ds);  // basis of B^{d-1} in sym coords

    Eigen::MatrixXd A = transition_up(X, p).dense();
    Eigen::MatrixXd En = Eigen::MatrixXd::Identity(A.rows(), A.cols());
    rep.dist.resize(N + 1);
    for (int n = 0; n <= N; ++n) {
        if (n > 0) En = A * En;
        double dist = 0.0;
        for (int i = 0; i < En.rows(); ++i) {
            Eigen::VectorXd g = ws.cwiseProduct(En.row(i).transpose());
            Eigen::VectorXd off = g - Q * (Q.transpose() * g);
            dist = std::max(dist, off.norm());
        }
        rep.dist[n] = dist;
    }

    if (window_lo < 0) window_lo = std::max(1, N / 4);
    if (window_hi < 0) window_hi = N;
    // distances below this are dominated by roundoff from the matrix powers
    // and would corrupt the slope fit
    const double floor_val = 1e-9 * std::max(1.0, rep.dist[0]);

    // least-squares slope of log dist over the window, ignoring the points
    // that already hit the numerical floor
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    rep.max_ratio = 0.0;
    for (int n = window_lo; n <= window_hi && n <= N; ++n) {
        if (rep.rate > 0.0)
            rep.max_ratio = std::max(rep.max_ratio, rep.dist[n] / std::pow(rep.rate, n));
        if (rep.dist[n] <= floor_val) continue;
        double x = n, y = std::log(rep.dist[n]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
    }
    if (cnt < 2) {
        // everything at the floor: decay is faster than any finite rate
        rep.slope = -std::numeric_limits<double>::infinity();
        rep.bound_ok = true;
        return rep;
    }
    rep.slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    if (rep.rate <= floor_val) {
        bool all_floor = true;
        for (int n = window_lo; n <= window_hi && n <= N; ++n)
            if (rep.dist[n] > floor_val) all_floor = false;
        rep.bound_ok = all_floor;
    } else {
        rep.bound_ok = rep.slope <= std::log(rep.rate) + 1e-6;
    }
    return rep;
}

RecurrenceReport recurrence_sum(const SimplicialComplex& X, const OrientedCell& sigma, double p,
                                int N) {
    int k = X.dim() - 1;
    int si = checked_index(X, sigma, k);
    double thr = lazy_threshold(X);
    if (p <= thr || p >= 1.0)
        throw std::invalid_argument("recurrence_sum requires (d-1)/(d+1) < p < 1");
    RecurrenceReport rep;
    auto cols = heat_column_series(X, p, sigma, N);
    double s = (k == 0) ? 1.0 : sigma.sign;
    rep.partial_sums.resize(N + 1);
    double acc = 0.0;
    for (int n = 0; n <= N; ++n) {
        acc += s * cols[n][si];
        rep.partial_sums[n] = acc;
    }
    WeightFunction w = WeightFunction::w_up(X);
    auto es = weighted_eigensolve(transition_up(X, 0.0).dense(), weight_vector(X, w, k));
    // spectral weights of the Dirac form: u_j(sigma)^2 in symmetrized coords
    rep.mass_at_one = 0.0;
    double integral0 = 0.0;
    bool divergent = false;
    for (int j = 0; j < es.eigenvalues.size(); ++j) {
        double u = es.vectors_sym(si, j);
        double wgt = u * u;
        double lam = es.eigenvalues[j];
        if (std::abs(lam - 1.0) <= 1e-10) {
            rep.mass_at_one += wgt;
            if (wgt > 1e-12) divergent = true;
        } else {
            integral0 += wgt / (1.0 - lam);
        }
    }
    rep.divergent = divergent;
    rep.integral = divergent ? std::numeric_limits<double>::infinity()
                             : integral0 / (1.0 - p);
    return rep;
}

}  // namespace sbrw
