#include "sbrw/hodge.hpp"

#include <Eigen/SVD>

namespace sbrw {

Eigen::MatrixXd image_basis_sym(const Eigen::MatrixXd& M, double tol) {
    if (M.cols() == 0 || M.rows() == 0) return Eigen::MatrixXd::Zero(M.rows(), 0);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    double cut = sv.size() ? sv[0] * tol : 0.0;
    int r = 0;
    while (r < sv.size() && sv[r] > cut) ++r;
    return svd.matrixU().leftCols(r);
}

namespace {

// w-orthogonal projection of f onto the image of the operator `op` (a map
// into Omega^k), computed in symmetrized coordinates.
Eigen::VectorXd project_onto_image(const SimplicialComplex& X, const Eigen::VectorXd& f, int k,
                                   const WeightFunction& w, const Eigen::SparseMatrix<double>& op) {
    Eigen::VectorXd wk = weight_vector(X, w, k);
    Eigen::VectorXd ws = wk.cwiseSqrt();
    Eigen::MatrixXd Ms = ws.asDiagonal() * Eigen::MatrixXd(op);
    Eigen::MatrixXd Q = image_basis_sym(Ms);
    Eigen::VectorXd g = ws.cwiseProduct(f);
    Eigen::VectorXd proj = Q * (Q.transpose() * g);
    return proj.cwiseQuotient(ws);
}

}  // namespace

HodgeDecomposition hodge_decompose(const SimplicialComplex& X, const Form& f,
                                   const WeightFunction& w) {
    int k = f.k;
    Eigen::VectorXd b = project_onto_image(X, f.values, k, w, boundary(X, k + 1, w).mat);
    Eigen::VectorXd c = project_onto_image(X, f.values, k, w, coboundary(X, k).mat);
    Eigen::VectorXd h = f.values - b - c;
    double denom = f.values.norm();
    // residual of the recombination; h is defined as the remainder, so this
    // measures how close b and c are to w-orthogonal complements
    double res = denom > 0 ? (f.values - (b + h + c)).norm() / denom : 0.0;
    return HodgeDecomposition{k, Form(k, b), Form(k, h), Form(k, c), res};
}

int betti(const SimplicialComplex& X, int k, const WeightFunction& w) {
    if (k < -1 || k > X.dim()) throw std::invalid_argument("betti: -1 <= k <= d");
    int n = X.n_cells(k);
    if (n == 0) return 0;
    Eigen::MatrixXd L = full_laplacian(X, k, w).dense();
    auto es = weighted_eigensolve(L, weight_vector(X, w, k));
    double maxabs = std::max(std::abs(es.eigenvalues[0]),
                             std::abs(es.eigenvalues[es.eigenvalues.size() - 1]));
    double cut = std::max(maxabs * kRankTol, 1e-12);
    int dim = 0;
    for (int i = 0; i < es.eigenvalues.size(); ++i)
        if (std::abs(es.eigenvalues[i]) <= cut) ++dim;
    return dim;
}

int betti(const SimplicialComplex& X, int k) { return betti(X, k, WeightFunction::w_up(X)); }

double spectral_gap(const SimplicialComplex& X, int k, const WeightFunction& w) {
    if (k < 0 || k > X.dim() - 1) throw std::invalid_argument("spectral_gap: 0 <= k <= d-1");
    Eigen::VectorXd wk = weight_vector(X, w, k);
    Eigen::VectorXd ws = wk.cwiseSqrt();
    Eigen::MatrixXd S =
        ws.asDiagonal() * upper_laplacian(X, k, w).dense() * ws.cwiseInverse().asDiagonal();
    S = 0.5 * (S + S.transpose());
    // Z_k = (B^k)^perp; in symmetrized coordinates that is the orthogonal
    // complement of the image of the symmetrized delta_k.
    Eigen::MatrixXd Ds = ws.asDiagonal() * coboundary(X, k).dense();
    Eigen::MatrixXd Q = image_basis_sym(Ds);
    int n = X.n_cells(k);
    Eigen::MatrixXd full = Eigen::MatrixXd::Identity(n, n);
    // basis of the complement via eigendecomposition of I - QQ^T
    Eigen::MatrixXd P = full - Q * Q.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> pe(P);
    int dimz = 0;
    for (int i = 0; i < n; ++i)
        if (pe.eigenvalues()[i] > 0.5) ++dimz;
    Eigen::MatrixXd Z = pe.eigenvectors().rightCols(dimz);
    if (dimz == 0) throw std::runtime_error("spectral_gap: Z_k is trivial");
    Eigen::MatrixXd R = Z.transpose() * S * Z;
    R = 0.5 * (R + R.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> re(R);
    return re.eigenvalues()[0];
}

double spectral_gap(const SimplicialComplex& X, int k) {
    return spectral_gap(X, k, WeightFunction::w_up(X));
}

Form project_B_up(const SimplicialComplex& X, const Form& f, int k, const WeightFunction& w) {
    return Form(k, project_onto_image(X, f.values, k, w, coboundary(X, k).mat));
}

Form project_Z(const SimplicialComplex& X, const Form& f, int k, const WeightFunction& w) {
    Form pb = project_B_up(X, f, k, w);
    return Form(k, f.values - pb.values);
}

EigenvalueOneReport check_eigenvalue_one(const SimplicialComplex& X, double tol) {
    int k = X.dim() - 1;
    WeightFunction w = WeightFunction::w_up(X);
    auto es = weighted_eigensolve(transition_up(X, 0.0).dense(), weight_vector(X, w, k));
    EigenvalueOneReport rep;
    rep.hypothesis_met = X.max_degree(k) <= X.dim();
    rep.found = false;
    rep.closest_eigenvalue = es.eigenvalues.size() ? es.eigenvalues[0] : 0.0;
    double best = 1e300;
    int best_i = -1;
    for (int i = 0; i < es.eigenvalues.size(); ++i) {
        double dist = std::abs(es.eigenvalues[i] - 1.0);
        if (dist < best) {
            best = dist;
            best_i = i;
            rep.closest_eigenvalue = es.eigenvalues[i];
        }
    }
    if (best_i >= 0 && best <= tol) {
        rep.found = true;
        rep.witness = Form(k, es.form_vector(best_i));
    }
    return rep;
}

}  // namespace sbrw
