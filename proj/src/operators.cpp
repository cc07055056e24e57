#include "sbrw/operators.hpp"

#include <stdexcept>
#include <vector>

namespace sbrw {

using Trip = Eigen::Triplet<double>;

CellOperator coboundary(const SimplicialComplex& X, int k) {
    if (k < 0 || k > X.dim() + 1) throw std::invalid_argument("coboundary: 0 <= k <= d+1");
    int rows = k > X.dim() ? 0 : X.n_cells(k);
    int cols = X.n_cells(k - 1);
    std::vector<Trip> trips;
    if (k == 0) {
        // delta_0 c = c on every vertex
        for (int i = 0; i < rows; ++i) trips.emplace_back(i, 0, 1.0);
    } else if (k <= X.dim()) {
        for (int i = 0; i < rows; ++i) {
            const auto& fl = X.faces(k, i);
            for (size_t pos = 0; pos < fl.size(); ++pos)
                trips.emplace_back(i, fl[pos], pos % 2 == 0 ? 1.0 : -1.0);
        }
    }
    CellOperator op{k - 1, k, Eigen::SparseMatrix<double>(rows, cols)};
    op.mat.setFromTriplets(trips.begin(), trips.end());
    return op;
}

CellOperator boundary(const SimplicialComplex& X, int k, const WeightFunction& w) {
    CellOperator d = coboundary(X, k);
    // partial_k = W_{k-1}^{-1} delta_k^T W_k
    Eigen::SparseMatrix<double> m = d.mat.transpose();
    if (k <= X.dim()) {
        Eigen::VectorXd wk = weight_vector(X, w, k);
        Eigen::VectorXd wk1 = weight_vector(X, w, k - 1);
        for (int c = 0; c < m.outerSize(); ++c)
            for (Eigen::SparseMatrix<double>::InnerIterator it(m, c); it; ++it)
                it.valueRef() *= wk[it.col()] / wk1[it.row()];
    }
    return CellOperator{k, k - 1, m};
}

CellOperator upper_laplacian(const SimplicialComplex& X, int k, const WeightFunction& w) {
    if (k < -1 || k > X.dim()) throw std::invalid_argument("upper_laplacian: -1 <= k <= d");
    CellOperator d = coboundary(X, k + 1);
    CellOperator b = boundary(X, k + 1, w);
    Eigen::SparseMatrix<double> m = b.mat * d.mat;
    if (k + 1 > X.dim()) {
        int n = X.n_cells(k);
        m = Eigen::SparseMatrix<double>(n, n);  // no (k+1)-cells: zero operator
    }
    return CellOperator{k, k, m};
}

CellOperator lower_laplacian(const SimplicialComplex& X, int k, const WeightFunction& w) {
    if (k < 0 || k > X.dim()) throw std::invalid_argument("lower_laplacian: 0 <= k <= d");
    CellOperator d = coboundary(X, k);
    CellOperator b = boundary(X, k, w);
    return CellOperator{k, k, d.mat * b.mat};
}

CellOperator full_laplacian(const SimplicialComplex& X, int k, const WeightFunction& w) {
    if (k == -1) return upper_laplacian(X, k, w);
    CellOperator up = upper_laplacian(X, k, w);
    CellOperator lo = lower_laplacian(X, k, w);
    return CellOperator{k, k, up.mat + lo.mat};
}

CellOperator upper_laplacian_coeff(const SimplicialComplex& X, int k, const WeightFunction& w) {
    if (k < 0 || k > X.dim() - 1)
        throw std::invalid_argument("upper_laplacian_coeff: 0 <= k <= d-1");
    int n = X.n_cells(k);
    std::vector<Trip> trips;
    for (int i = 0; i < n; ++i) {
        double diag = 0.0;
        for (int cf : X.cofaces(k, i)) diag += w.at(k + 1, cf);
        double wi = w.at(k, i);
        trips.emplace_back(i, i, diag / wi);
        for (int cf : X.cofaces(k, i)) {
            for (auto [nb, s] : X.neighbors_in_coface(k, i, cf)) {
                double sign = (k == 0) ? 1.0 : static_cast<double>(s);
                trips.emplace_back(i, nb, -sign * w.at(k + 1, cf) / wi);
            }
        }
    }
    CellOperator op{k, k, Eigen::SparseMatrix<double>(n, n)};
    op.mat.setFromTriplets(trips.begin(), trips.end());
    return op;
}

CellOperator lower_laplacian_coeff(const SimplicialComplex& X, int k, const WeightFunction& w) {
    if (k < 1 || k > X.dim())
        throw std::invalid_argument("lower_laplacian_coeff: 1 <= k <= d");
    int n = X.n_cells(k);
    std::vector<Trip> trips;
    for (int i = 0; i < n; ++i) {
        const auto& fl = X.faces(k, i);
        double diag = 0.0;
        for (int f : fl) diag += w.at(k, i) / w.at(k - 1, f);
        trips.emplace_back(i, i, diag);
        for (size_t pos = 0; pos < fl.size(); ++pos) {
            for (auto [nb, s] : X.adjacent_through_face(k, i, static_cast<int>(pos)))
                trips.emplace_back(i, nb, -s * w.at(k, nb) / w.at(k - 1, fl[pos]));
        }
    }
    CellOperator op{k, k, Eigen::SparseMatrix<double>(n, n)};
    op.mat.setFromTriplets(trips.begin(), trips.end());
    return op;
}

CellOperator transition_up(const SimplicialComplex& X, double p) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("transition_up: p in [0,1]");
    int k = X.dim() - 1;
    int n = X.n_cells(k);
    std::vector<Trip> trips;
    for (int i = 0; i < n; ++i) {
        int dg = X.deg(k, i);
        if (dg < 1)
            throw std::invalid_argument("transition_up: zero-degree (d-1)-cell " +
                                        X.cell(k, i).str());
        trips.emplace_back(i, i, p);
        for (int cf : X.cofaces(k, i))
            for (auto [nb, s] : X.neighbors_in_coface(k, i, cf)) {
                double sign = (k == 0) ? 1.0 : static_cast<double>(s);
                trips.emplace_back(i, nb, (1.0 - p) / dg * sign);
            }
    }
    CellOperator op{k, k, Eigen::SparseMatrix<double>(n, n)};
    op.mat.setFromTriplets(trips.begin(), trips.end());
    return op;
}

CellOperator transition_walk(const SimplicialComplex& X, double p) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("transition_walk: p in [0,1]");
    int k = X.dim() - 1;
    int d = X.dim();
    int n = X.n_cells(k);
    std::vector<Trip> trips;
    for (int i = 0; i < n; ++i) {
        if (X.deg(k, i) < 1)
            throw std::invalid_argument("transition_walk: zero-degree (d-1)-cell " +
                                        X.cell(k, i).str());
        trips.emplace_back(i, i, p);
        for (int cf : X.cofaces(k, i))
            for (auto [nb, s] : X.neighbors_in_coface(k, i, cf)) {
                double sign = (k == 0) ? 1.0 : static_cast<double>(s);
                trips.emplace_back(i, nb, (1.0 - p) / d * sign / X.deg(k, nb));
            }
    }
    CellOperator op{k, k, Eigen::SparseMatrix<double>(n, n)};
    op.mat.setFromTriplets(trips.begin(), trips.end());
    return op;
}

CellOperator transition_down(const SimplicialComplex& X, double p) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("transition_down: p in [0,1]");
    int d = X.dim();
    int n = X.n_cells(d);
    std::vector<Trip> trips;
    for (int i = 0; i < n; ++i) {
        trips.emplace_back(i, i, p);  // 1 - (1-p) * (d+1)/(d+1)
        for (size_t pos = 0; pos < X.faces(d, i).size(); ++pos)
            for (auto [nb, s] : X.adjacent_through_face(d, i, static_cast<int>(pos)))
                trips.emplace_back(i, nb, (1.0 - p) / (d + 1) * s);
    }
    CellOperator op{d, d, Eigen::SparseMatrix<double>(n, n)};
    op.mat.setFromTriplets(trips.begin(), trips.end());
    return op;
}

WeightedEigen weighted_eigensolve(const Eigen::MatrixXd& A, const Eigen::VectorXd& w,
                                  int dense_limit) {
    if (A.rows() != A.cols() || A.rows() != w.size())
        throw std::invalid_argument("weighted_eigensolve: shape mismatch");
    if (A.rows() > dense_limit)
        throw std::runtime_error("weighted_eigensolve: matrix too large for dense solve");
    WeightedEigen out;
    out.w_sqrt = w.cwiseSqrt();
    Eigen::MatrixXd S = out.w_sqrt.asDiagonal() * A * out.w_sqrt.cwiseInverse().asDiagonal();
    S = 0.5 * (S + S.transpose());  // kill asymmetry at roundoff level
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
    out.eigenvalues = es.eigenvalues();
    out.vectors_sym = es.eigenvectors();
    return out;
}

Eigen::MatrixXd spectral_projector(const WeightedEigen& es, double lambda, double tol) {
    const int n = static_cast<int>(es.eigenvalues.size());
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        if (std::abs(es.eigenvalues[i] - lambda) <= tol) {
            P.noalias() += es.vectors_sym.col(i) * es.vectors_sym.col(i).transpose();
        }
    }
    return es.w_sqrt.cwiseInverse().asDiagonal() * P * es.w_sqrt.asDiagonal();
}

}  // namespace sbrw
