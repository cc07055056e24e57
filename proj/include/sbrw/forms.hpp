#pragma once

#include <Eigen/Dense>

#include "sbrw/complex.hpp"

namespace sbrw {

// A k-form: one real value per canonical k-cell (value on the positively
// oriented representative). Evaluation at a flipped cell negates.
struct Form {
    int k = 0;
    Eigen::VectorXd values;

    Form() = default;
    Form(int k_, Eigen::VectorXd v) : k(k_), values(std::move(v)) {}

    static Form zero(const SimplicialComplex& X, int k) {
        return Form(k, Eigen::VectorXd::Zero(X.n_cells(k)));
    }
    static Form dirac(const SimplicialComplex& X, const OrientedCell& sigma) {
        int i = X.index_of(sigma.cell);
        if (i < 0) throw std::invalid_argument("dirac: cell not in complex");
        Form f = zero(X, sigma.dim());
        f.values[i] = sigma.sign;
        return f;
    }

    double eval(const SimplicialComplex& X, const OrientedCell& sigma) const {
        int i = X.index_of(sigma.cell);
        if (i < 0 || sigma.dim() != k) throw std::invalid_argument("eval: bad cell");
        return sigma.sign * values[i];
    }
};

// <f,g> = sum over unoriented k-cells of w * f * g.
inline double inner_product(const Form& f, const Form& g, const WeightFunction& w) {
    if (f.k != g.k || f.values.size() != g.values.size())
        throw std::invalid_argument("inner_product: dimension mismatch");
    double s = 0.0;
    for (int i = 0; i < f.values.size(); ++i) s += w.at(f.k, i) * f.values[i] * g.values[i];
    return s;
}

inline Eigen::VectorXd weight_vector(const SimplicialComplex& X, const WeightFunction& w, int k) {
    if (k == -1) return Eigen::VectorXd::Constant(1, w.empty_cell);
    Eigen::VectorXd v(X.n_cells(k));
    for (int i = 0; i < v.size(); ++i) v[i] = w.at(k, i);
    return v;
}

}  // namespace sbrw
