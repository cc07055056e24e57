#include <doctest.h>

#include "fixtures.hpp"
#include "sbrw/kernels.hpp"

using namespace sbrw;
using fixtures::oc;

TEST_SUITE_BEGIN("kernels");

TEST_CASE("heat kernel starts at the Dirac pattern") {
    auto X = fixtures::two_triangles();
    auto hk = exact_heat_kernel(X, 0.3, 4);
    CHECK(hk.E[0] == Eigen::MatrixXd::Identity(5, 5));
}

TEST_CASE("triangle return kernel in closed form") {
    auto X = fixtures::single_triangle();
    auto hk = exact_heat_kernel(X, 0.5, 12);
    int e = X.index_of(Cell({0, 1}));
    for (int n = 0; n <= 12; ++n) {
        double expect = 2.0 / 3.0 + (1.0 / 3.0) * std::pow(-0.5, n);
        CHECK(hk.E[n](e, e) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("matrix powers equal the one-step recursion") {
    // independent route: expand the defining recursion with up_neighbors
    for (const auto& X : {fixtures::two_triangles(), fixtures::torus7()}) {
        int k = X.dim() - 1;
        int m = X.n_cells(k);
        double p = 0.4;
        auto hk = exact_heat_kernel(X, p, 50);
        Eigen::MatrixXd E = Eigen::MatrixXd::Identity(m, m);
        for (int n = 1; n <= 50; ++n) {
            Eigen::MatrixXd next(m, m);
            for (int i = 0; i < m; ++i) {
                Eigen::RowVectorXd acc = p * E.row(i);
                OrientedCell s(X.cell(k, i), 1);
                for (const auto& o : X.up_neighbors(s))
                    acc += (1.0 - p) / X.deg(k, i) * o.sign *
                           E.row(X.index_of(o.cell));
                next.row(i) = acc;
            }
            E = next;
            CHECK((E - hk.E[n]).cwiseAbs().maxCoeff() <= 1e-12);
        }
    }
}

TEST_CASE("kernel antisymmetry in both arguments") {
    auto X = fixtures::torus7();
    auto hk = exact_heat_kernel(X, 0.5, 6);
    auto cp = heat_column_series(X, 0.5, oc({0, 1}), 6);
    auto cm = heat_column_series(X, 0.5, oc({0, 1}).flipped(), 6);
    for (int n = 0; n <= 6; ++n) CHECK((cp[n] + cm[n]).norm() == 0.0);
    // column route equals the matrix route
    int j = X.index_of(Cell({0, 1}));
    for (int n = 0; n <= 6; ++n) CHECK((hk.E[n].col(j) - cp[n]).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("d = 1 kernels match the classical lazy walk") {
    auto X = fixtures::cycle_graph(6);
    double p = 0.0;
    auto hk = exact_heat_kernel(X, p, 10);
    // independent oracle: plain transition matrix of the simple walk
    int m = X.n_cells(0);
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(m, m);
    for (int e = 0; e < X.n_cells(1); ++e) {
        auto v = X.cell(1, e).verts;
        int a = X.index_of(Cell({v[0]})), b = X.index_of(Cell({v[1]}));
        P(a, b) += 0.5;
        P(b, a) += 0.5;
    }
    Eigen::MatrixXd Pn = Eigen::MatrixXd::Identity(m, m);
    for (int n = 0; n <= 10; ++n) {
        CHECK((hk.E[n] - Pn).cwiseAbs().maxCoeff() <= 1e-12);
        Pn = P * Pn;
    }
}

TEST_CASE("heat kernel equals the normalized walk expectation process") {
    for (const auto& X :
         {fixtures::single_triangle(), fixtures::two_triangles(), fixtures::torus7()}) {
        int d = X.dim();
        for (double p : {0.0, 0.5, 0.9}) {
            double pp = p / (1.0 + (1.0 - p) * (d - 1));
            auto lhs = exact_heat_kernel(X, p, 10);
            auto rhs = walk_expectation(X, pp, 10);
            for (int n = 0; n <= 10; ++n)
                CHECK((lhs.E[n] - rhs[n]).cwiseAbs().maxCoeff() <= 1e-12);
        }
    }
    // d = 1: p' = p and the two processes coincide outright
    auto G = fixtures::cycle_graph(5);
    auto lhs = exact_heat_kernel(G, 0.3, 8);
    auto rhs = walk_expectation(G, 0.3, 8);
    for (int n = 0; n <= 8; ++n)
        CHECK((lhs.E[n] - rhs[n]).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("first visit kernel basics") {
    auto X = fixtures::two_triangles();
    double p = 0.35;
    auto s0 = oc({1, 2});
    auto fv = first_visit_kernel(X, p, s0, 8);
    int i0 = X.index_of(s0.cell);
    CHECK(fv.F[0][i0] == doctest::Approx(p));  // F_1(s,s) = p

    // F_n(s, target) = E^s[K_n] - E^s[K_n-bar] via the unsigned route
    for (int n = 1; n <= 5; ++n) {
        for (int i = 0; i < X.n_cells(1); ++i) {
            OrientedCell s(X.cell(1, i), 1);
            double plus = expected_first_visits(X, p, s, s0, n);
            double minus = expected_first_visits(X, p, s, s0.flipped(), n);
            CHECK(fv.F[n - 1][i] == doctest::Approx(plus - minus).epsilon(1e-10));
        }
    }

    // K_1 = N_1: the unsigned first-visit count at time one is the one-step
    // expectation, nonnegative
    Eigen::SparseMatrix<double> M = oriented_one_step(X, p);
    for (int i = 0; i < X.n_cells(1); ++i) {
        OrientedCell s(X.cell(1, i), 1);
        double k1 = expected_first_visits(X, p, s, s0, 1);
        int from = slot_of(X, 1, i, 1), to = slot_of(X, 1, i0, 1);
        CHECK(k1 == doctest::Approx(Eigen::MatrixXd(M)(from, to)));
    }
}

TEST_CASE("convolution identity") {
    // E_n(s,s') = sum_k F_k(s,s') E_{n-k}(s',s')
    for (const auto& X : {fixtures::single_triangle(), fixtures::torus7()}) {
        double p = 0.5;
        auto s0 = OrientedCell(X.cell(X.dim() - 1, 0), 1);
        int i0 = 0;
        auto hk = exact_heat_kernel(X, p, 20);
        auto fv = first_visit_kernel(X, p, s0, 20);
        for (int n = 1; n <= 20; ++n) {
            for (int i = 0; i < X.n_cells(X.dim() - 1); ++i) {
                double conv = 0.0;
                for (int k = 1; k <= n; ++k)
                    conv += fv.F[k - 1][i] * hk.E[n - k](i0, i0);
                CHECK(std::abs(hk.E[n](i, i0) - conv) <= 1e-10);
            }
        }
    }
}

TEST_CASE("generating functions and the return identity") {
    for (const auto& X :
         {fixtures::single_triangle(), fixtures::hollow_tetrahedron(), fixtures::torus7()}) {
        auto s0 = OrientedCell(X.cell(X.dim() - 1, 0), 1);
        auto gf = generating_functions(X, 0.5, s0, 20);
        CHECK(gf.G[0] == 1.0);
        CHECK(gf.Fcal[0] == 0.0);
        CHECK(gf.max_identity_residual <= 1e-9);
        for (int n = 0; n <= 20; ++n) {
            CHECK(std::abs(gf.G[n]) <= std::pow(X.dim(), n) + 1e-9);
            CHECK(std::abs(gf.Fcal[n]) <= std::pow(X.dim(), n) + 1e-9);
        }
    }
}

TEST_CASE("limit kernel") {
    auto X = fixtures::single_triangle();
    Eigen::MatrixXd Einf = limit_kernel(X, 0.5);
    int e = X.index_of(Cell({0, 1}));
    CHECK(Einf(e, e) == doctest::Approx(2.0 / 3.0));

    // iteration cross-check
    auto hk = exact_heat_kernel(X, 0.75, 80);
    CHECK((limit_kernel(X, 0.75) - hk.E[80]).cwiseAbs().maxCoeff() <= 1e-10);

    // p = 1 freezes everything
    CHECK((limit_kernel(X, 1.0) - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() ==
          0.0);

    // refusal below the threshold and at it (triangle is disorientable)
    CHECK_THROWS(limit_kernel(X, 0.2));
    CHECK_THROWS(limit_kernel(X, 1.0 / 3.0));

    // hollow tetrahedron: H_1 = 0, so the limit rows are exact forms
    auto T = fixtures::hollow_tetrahedron();
    auto w = WeightFunction::w_up(T);
    Eigen::MatrixXd L = limit_kernel(T, 0.5);
    for (int i = 0; i < L.rows(); ++i) {
        Form row(1, L.row(i).transpose());
        Form z = project_Z(T, row, 1, w);
        CHECK(z.values.norm() <= 1e-8);
    }
}

TEST_CASE("homology dimension from the limit kernel") {
    for (double p : {0.5, 0.75}) {
        CHECK(homology_dim_from_kernel(fixtures::single_triangle(), p) == 0);
        CHECK(homology_dim_from_kernel(fixtures::hollow_tetrahedron(), p) == 0);
        CHECK(homology_dim_from_kernel(fixtures::torus7(), p) == 2);
    }
    // d = 1 degeneration: two disjoint cycles, reduced 0-homology
    auto G = SimplicialComplex::from_maximal_faces(
        {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
    CHECK(homology_dim_from_kernel(G, 0.5) == betti(G, 0));
    CHECK(betti(G, 0) == 1);
}

TEST_CASE("convergence rate report") {
    auto X = fixtures::single_triangle();
    auto rep = convergence_rate_check(X, 0.75, 40, 10, 40);
    CHECK(rep.applicable);
    CHECK(rep.lambda == doctest::Approx(3.0));
    CHECK(rep.rate == doctest::Approx(0.25));
    CHECK(rep.bound_ok);
    // on the triangle the decay rate is attained exactly
    CHECK(rep.slope == doctest::Approx(std::log(0.25)).epsilon(1e-6));

    // p = 1: nothing moves, dist stays at the Dirac distance, bound rate is 1
    auto frozen = convergence_rate_check(X, 1.0, 20, 5, 20);
    CHECK(frozen.applicable);
    for (int n = 1; n <= 20; ++n)
        CHECK(frozen.dist[n] == doctest::Approx(frozen.dist[0]));
    CHECK(frozen.bound_ok);

    // nontrivial homology: not applicable, skipped with a note
    auto torus_rep = convergence_rate_check(fixtures::torus7(), 0.8, 30);
    CHECK_FALSE(torus_rep.applicable);
    CHECK_FALSE(torus_rep.note.empty());

    CHECK_THROWS(convergence_rate_check(X, 0.5, 20));  // below d/(d+1)
}

TEST_CASE("recurrence sums on the triangle") {
    auto X = fixtures::single_triangle();
    auto s = oc({0, 1});
    for (double p : {0.6, 0.75, 0.9}) {
        auto rep = recurrence_sum(X, s, p, 200);
        CHECK(rep.mass_at_one == doctest::Approx(2.0 / 3.0));
        CHECK(rep.divergent);  // laziness-independent
        // partial sums grow like n * mass
        CHECK(rep.partial_sums[200] > 100 * 2.0 / 3.0);
    }
    CHECK_THROWS(recurrence_sum(X, s, 0.2, 10));
    CHECK_THROWS(recurrence_sum(X, s, 1.0, 10));
}

TEST_SUITE_END();
