#include "sbrw/dirichlet.hpp"

#include <Eigen/SVD>
#include <set>
#include <stdexcept>

namespace sbrw {

namespace {

std::pair<std::vector<int>, std::vector<int>> split_indices(const SimplicialComplex& X,
                                                            const std::vector<Cell>& A) {
    int k = X.dim() - 1;
    int m = X.n_cells(k);
    std::vector<char> in_A(m, 0);
    for (const auto& c : A) {
        if (c.dim() != k)
            throw std::invalid_argument("boundary cell has wrong dimension: " + c.str());
        int i = X.index_of(c);
        if (i < 0) throw std::invalid_argument("boundary cell not in complex: " + c.str());
        in_A[i] = 1;
    }
    std::vector<int> inside, bdry;
    for (int i = 0; i < m; ++i) (in_A[i] ? bdry : inside).push_back(i);
    if (bdry.empty()) throw std::invalid_argument("boundary set A is empty");
    if (inside.empty())
        throw std::invalid_argument("boundary set A covers every (d-1)-cell; F = f is forced");
    return {inside, bdry};
}

}  // namespace

RestrictedLaplacian restrict_laplacian(const SimplicialComplex& X, const std::vector<Cell>& A) {
    auto [inside, bdry] = split_indices(X, A);
    Eigen::MatrixXd L = upper_laplacian(X, X.dim() - 1, WeightFunction::w_up(X)).dense();
    RestrictedLaplacian R;
    R.inside = inside;
    R.boundary = bdry;
    R.L.resize(inside.size(), inside.size());
    R.Q.resize(inside.size(), bdry.size());
    for (size_t r = 0; r < inside.size(); ++r) {
        for (size_t c = 0; c < inside.size(); ++c) R.L(r, c) = L(inside[r], inside[c]);
        for (size_t c = 0; c < bdry.size(); ++c) R.Q(r, c) = -L(inside[r], bdry[c]);
    }
    return R;
}

InvertibilityReport is_invertible(const SimplicialComplex& X, const std::vector<Cell>& A) {
    RestrictedLaplacian R = restrict_laplacian(X, A);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(R.L, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    InvertibilityReport rep;
    rep.largest_sv = sv.size() ? sv[0] : 0.0;
    rep.smallest_sv = sv.size() ? sv[sv.size() - 1] : 0.0;
    rep.invertible = rep.smallest_sv > kRankTol * rep.largest_sv;
    if (!rep.invertible && sv.size())
        rep.witness = svd.matrixV().col(sv.size() - 1);
    return rep;
}

ExhaustiveReport check_exhaustive(const SimplicialComplex& X, const std::vector<Cell>& A) {
    auto [inside, bdry] = split_indices(X, A);
    int k = X.dim() - 1;
    int m = X.n_cells(k);
    std::vector<char> have(m, 0);
    for (int i : bdry) have[i] = 1;
    ExhaustiveReport rep;
    rep.sequence.push_back({});
    for (int i : bdry) rep.sequence.back().push_back(X.cell(k, i));
    int covered = static_cast<int>(bdry.size());
    bool grew = true;
    while (grew && covered < m) {
        grew = false;
        std::vector<int> added;
        for (int i = 0; i < m; ++i) {
            if (have[i]) continue;
            for (int cf : X.cofaces(k, i)) {
                bool complete = true;
                for (int f : X.faces(k + 1, cf))
                    if (f != i && !have[f]) complete = false;
                if (complete) {
                    added.push_back(i);
                    break;
                }
            }
        }
        if (!added.empty()) {
            grew = true;
            rep.sequence.push_back({});
            for (int i : added) {
                have[i] = 1;
                ++covered;
                rep.sequence.back().push_back(X.cell(k, i));
            }
        }
    }
    rep.exhaustive = covered == m;
    return rep;
}

bool check_open_hinge(const SimplicialComplex& X, const std::vector<Cell>& A) {
    if (X.dim() < 2) throw std::invalid_argument("check_open_hinge needs d >= 2");
    int k = X.dim() - 1;
    std::set<std::vector<VertexId>> in_A;
    for (const auto& c : A) in_A.insert(c.verts);
    for (int i = 0; i < X.n_cells(k - 1); ++i) {
        if (X.deg(k - 1, i) == 0) continue;  // delta of its Dirac form vanishes
        bool all_out = true;
        for (int cf : X.cofaces(k - 1, i))
            if (in_A.count(X.cell(k, cf).verts)) all_out = false;
        if (all_out) return true;
    }
    return false;
}

GreenFunction green_function(const SimplicialComplex& X, const std::vector<Cell>& A, double p) {
    int d = X.dim();
    double thr = static_cast<double>(d - 1) / (d + 1);
    if (!(p > thr && p < 1.0))
        throw std::invalid_argument("green_function requires (d-1)/(d+1) < p < 1");
    auto inv = is_invertible(X, A);
    if (!inv.invertible)
        throw std::invalid_argument(
            "restricted Laplacian is singular (smallest singular value " +
            std::to_string(inv.smallest_sv) + "); the Dirichlet problem is degenerate");
    GreenFunction g;
    g.p = p;
    g.blocks = restrict_laplacian(X, A);
    g.G = (1.0 - p) * g.blocks.L.inverse();
    return g;
}

Eigen::MatrixXd absorbing_sum_exact(const SimplicialComplex& X, const std::vector<Cell>& A,
                                    double p) {
    GreenFunction g = green_function(X, A, p);
    return g.G / ((1.0 - p) * (1.0 - p));
}

DirichletSolution solve_dirichlet(const SimplicialComplex& X, const BoundaryData& bd, double p) {
    int k = X.dim() - 1;
    auto inv = is_invertible(X, bd.A);
    if (!inv.invertible) {
        std::string msg =
            "Dirichlet problem has no unique solution: restricted Laplacian singular "
            "(smallest singular value " +
            std::to_string(inv.smallest_sv) + "). ker delta_d^{X\\A} is nontrivial and "
            "H_d(X,A) != 0; a kernel witness is available from is_invertible().";
        throw std::invalid_argument(msg);
    }
    RestrictedLaplacian R = restrict_laplacian(X, bd.A);

    // boundary values in canonical coordinates
    std::vector<int> pos_of(X.n_cells(k), -1);
    for (size_t c = 0; c < R.boundary.size(); ++c) pos_of[R.boundary[c]] = static_cast<int>(c);
    Eigen::VectorXd fb = Eigen::VectorXd::Zero(R.boundary.size());
    std::vector<char> seen(R.boundary.size(), 0);
    for (const auto& [oc, val] : bd.f) {
        int i = X.index_of(oc.cell);
        if (i < 0 || oc.dim() != k)
            throw std::invalid_argument("boundary value on invalid cell: " + oc.cell.str());
        if (pos_of[i] < 0)
            throw std::invalid_argument("boundary value on a cell outside A: " + oc.cell.str());
        double canon = (k == 0 ? 1 : oc.sign) * val;
        if (seen[pos_of[i]] && std::abs(fb[pos_of[i]] - canon) > 1e-12)
            throw std::invalid_argument("inconsistent boundary values on " + oc.cell.str());
        fb[pos_of[i]] = canon;
        seen[pos_of[i]] = 1;
    }

    Eigen::VectorXd rhs = R.Q * fb;
    Eigen::VectorXd x_direct = R.L.fullPivLu().solve(rhs);
    // Green-function route of the solution formula; the laziness factors cancel
    GreenFunction g = green_function(X, bd.A, p);
    Eigen::VectorXd x_green = (1.0 / (1.0 - p)) * (g.G * rhs);

    DirichletSolution sol;
    sol.solver_gap = (x_direct - x_green).lpNorm<Eigen::Infinity>();
    sol.F = Form::zero(X, k);
    for (size_t c = 0; c < R.boundary.size(); ++c) sol.F.values[R.boundary[c]] = fb[c];
    for (size_t r = 0; r < R.inside.size(); ++r) sol.F.values[R.inside[r]] = x_direct[r];

    Eigen::VectorXd lap =
        upper_laplacian(X, k, WeightFunction::w_up(X)).dense() * sol.F.values;
    sol.residual = 0.0;
    for (int i : R.inside) sol.residual = std::max(sol.residual, std::abs(lap[i]));
    return sol;
}

}  // namespace sbrw
