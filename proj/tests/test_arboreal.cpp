#include <doctest.h>

#include <numbers>

#include "fixtures.hpp"
#include "sbrw/arboreal.hpp"
#include "sbrw/kernels.hpp"

using namespace sbrw;

TEST_SUITE_BEGIN("arboreal");

TEST_CASE("truncation structure") {
    // d=2, k=1, R=2: sigma0 gets one triangle, nothing else attaches
    auto T1 = build_truncated_T(2, 1, 2);
    CHECK(T1.X.n_cells(2) == 1);
    CHECK(T1.X.n_cells(1) == 3);

    // d=1, k=2: a path segment of the integer line, 2R edges
    auto P = build_truncated_T(1, 2, 5);
    CHECK(P.X.n_cells(1) == 10);
    CHECK(P.X.n_cells(0) == 11);

    // d=2, k=2: interior edges have degree 2, layer-R edges degree 1
    auto T = build_truncated_T(2, 2, 3);
    CHECK(T.X.deg(T.sigma0.cell) == 2);
    for (int i = 0; i < T.X.n_cells(1); ++i) {
        if (T.layer[i] < T.radius)
            CHECK(T.X.deg(1, i) == 2);
        else
            CHECK(T.X.deg(1, i) == 1);
    }
    CHECK(T.layer[T.X.index_of(T.sigma1.cell)] == 1);
    CHECK(T.layer[T.X.index_of(T.sigma2.cell)] == 2);

    // sigma0 has k*d oriented neighbors, all at layer one
    auto nb = T.X.up_neighbors(T.sigma0);
    CHECK(static_cast<int>(nb.size()) == 2 * 2);
    for (const auto& o : nb) CHECK(T.layer[T.X.index_of(o.cell)] == 1);

    CHECK_THROWS(build_truncated_T(2, 3, 12, 1000));  // cell budget
}

TEST_CASE("layer recursion equals the explicit truncation kernels") {
    // the lumped (R+1)-vector recursion must reproduce the honest matrix
    // kernel on the explicit complex, for heat and first-visit series alike
    struct Case {
        int d, k, R;
    };
    for (auto [d, k, R] : {Case{2, 2, 4}, Case{2, 3, 3}, Case{3, 2, 3}, Case{1, 2, 6}}) {
        auto T = build_truncated_T(d, k, R);
        for (double p : {0.0, 0.4}) {
            int N = 2 * R;  // run past the radius to exercise boundary rows
            auto diag_layers = heat_diag_layers(d, k, p, R, N);
            auto cols = heat_column_series(T.X, p, T.sigma0, N);
            int i0 = T.X.index_of(T.sigma0.cell);
            int i1 = T.X.index_of(T.sigma1.cell);
            double s1 = d == 1 ? 1.0 : T.sigma1.sign;
            auto layer_vecs = heat_layer_vectors(d, k, p, R, N);
            for (int n = 0; n <= N; ++n) {
                CHECK(std::abs(diag_layers[n] - cols[n][i0]) <= 1e-12);
                // layer-1 value against the marked representative
                CHECK(std::abs(layer_vecs[n][1] - s1 * cols[n][i1]) <= 1e-12);
            }
            auto fv = first_visit_layers(d, k, p, R, N);
            auto fvx = first_visit_kernel(T.X, p, T.sigma0, N);
            for (int n = 1; n <= N; ++n) {
                CHECK(std::abs(fv.F[n] - fvx.F[n - 1][i0]) <= 1e-12);
                CHECK(std::abs(fv.U[n] - s1 * fvx.F[n - 1][i1]) <= 1e-12);
            }
        }
    }
}

TEST_CASE("locality: the radius is invisible below the horizon") {
    for (double p : {0.0, 0.5}) {
        auto a = heat_diag_layers(2, 4, p, 12, 10);
        auto b = heat_diag_layers(2, 4, p, 14, 10);
        for (int n = 0; n < 11; ++n) CHECK(a[n] == b[n]);
    }
}

TEST_CASE("U series and the functional equation") {
    struct Case {
        int d, k;
    };
    for (auto [d, k] : {Case{2, 2}, Case{2, 3}, Case{3, 2}}) {
        for (double p : {0.0, 0.3, 0.7}) {
            auto us = u_series(d, k, p, 15);
            CHECK(us.max_residual <= 1e-10);
            CHECK(us.u[1] == doctest::Approx((1 - p) / k).epsilon(1e-14));
        }
    }
    // closed-form coefficient stream agrees with the truncation series
    for (auto [d, k] : {Case{2, 2}, Case{2, 3}, Case{3, 2}, Case{1, 2}}) {
        for (double p : {0.0, 0.5}) {
            auto us = u_series(d, k, p, 14);
            auto uc = u_coeffs_closed(d, k, p, 14);
            for (int n = 0; n <= 14; ++n) CHECK(us.u[n] == doctest::Approx(uc[n]).epsilon(1e-12));
        }
    }
    // d=1, k=2, p=0: first-return series of the simple walk on Z
    auto u = u_coeffs_closed(1, 2, 0.0, 7);
    CHECK(u[1] == doctest::Approx(0.5));
    CHECK(u[2] == doctest::Approx(0.0));
    CHECK(u[3] == doctest::Approx(1.0 / 8));
    CHECK(u[5] == doctest::Approx(1.0 / 16));
    CHECK(u[7] == doctest::Approx(5.0 / 128));
}

TEST_CASE("F from U") {
    auto u = u_coeffs_closed(2, 3, 0.25, 10);
    auto f = f_from_u(0.25, 2, u);
    CHECK(f[1] == doctest::Approx(0.25));
    for (size_t n = 2; n < f.size(); ++n)
        CHECK(f[n] == doctest::Approx((1 - 0.25) * 2 * u[n - 1]));

    // matches the first-visit kernel at sigma0 on a truncation whose radius
    // exceeds the order
    auto T = build_truncated_T(2, 3, 7);
    auto fvx = first_visit_kernel(T.X, 0.25, T.sigma0, 6);
    int i0 = T.X.index_of(T.sigma0.cell);
    for (int n = 1; n <= 6; ++n) CHECK(f[n] == doctest::Approx(fvx.F[n - 1][i0]).epsilon(1e-12));
}

TEST_CASE("closed form G and its Taylor coefficients") {
    CHECK(closed_form_G(0.0, 2, 3).real() == doctest::Approx(1.0));
    CHECK(closed_form_G(0.0, 2, 3).imag() == doctest::Approx(0.0));

    struct Case {
        int d, k;
    };
    for (auto [d, k] : {Case{1, 2}, Case{2, 2}, Case{2, 3}, Case{2, 4}}) {
        auto g = g_coeffs_closed(d, k, 0.0, 12);
        auto diag = heat_diag_layers(d, k, 0.0, 14, 12);
        for (int n = 0; n <= 12; ++n) CHECK(g[n] == doctest::Approx(diag[n]).epsilon(1e-11));
        // the numeric closed form sums the same series at small |z|
        std::complex<double> z(0.08, 0.0);
        std::complex<double> val = closed_form_G(z, d, k);
        std::complex<double> sum = 0.0;
        auto glong = g_coeffs_closed(d, k, 0.0, 40);
        for (int n = 40; n >= 0; --n) sum = sum * z + glong[n];
        CHECK(std::abs(val - sum) <= 1e-10);
    }

    // k = 1 degenerates to the single d-simplex: E_n = d/(d+1) + (-d)^n/(d+1)
    auto g1 = g_coeffs_closed(2, 1, 0.0, 10);
    auto diag1 = heat_diag_layers(2, 1, 0.0, 12, 10);
    for (int n = 0; n <= 10; ++n) {
        double expect = 2.0 / 3.0 + std::pow(-2.0, n) / 3.0;
        CHECK(g1[n] == doctest::Approx(expect));
        CHECK(diag1[n] == doctest::Approx(expect));
    }
}

TEST_CASE("radius of convergence") {
    CHECK(radius_of_convergence(1, 2) == doctest::Approx(1.0));
    CHECK(radius_of_convergence(2, 4) == doctest::Approx(4.0 / (1.0 + 2.0 * std::sqrt(6.0))));
    CHECK(radius_of_convergence(2, 3) == doctest::Approx(3.0 / 5.0));
    CHECK(radius_of_convergence(2, 1) == doctest::Approx(0.5));

    // growth-rate consistency: two-step ratios of |E_n| approach 1/radius
    struct Case {
        int d, k;
    };
    for (auto [d, k] : {Case{1, 2}, Case{2, 4}}) {
        auto diag = heat_diag_layers(d, k, 0.0, 50, 46);
        double best = 0.0;
        for (int n = 36; n <= 44; ++n) {
            double num = std::abs(diag[n + 2]), den = std::abs(diag[n]);
            if (den > 0) best = std::max(best, std::sqrt(num / den));
        }
        CHECK(std::abs(best * radius_of_convergence(d, k) - 1.0) <= 0.05);
    }
}

TEST_CASE("stieltjes transform") {
    struct Case {
        int d, k;
    };
    for (auto [d, k] : {Case{1, 2}, Case{2, 2}, Case{2, 3}, Case{3, 2}, Case{2, 5}}) {
        // Herglotz property on a grid in the upper half plane
        for (double x : {-2.0, -0.5, 0.0, 0.7, 1.5}) {
            for (double y : {1e-3, 0.1, 1.0}) {
                auto s = stieltjes({x, y}, d, k);
                CHECK(s.imag() > 0.0);
            }
        }
        // -1/z normalization at infinity
        std::complex<double> z(0.0, 1e3);
        CHECK(std::abs(stieltjes(z, d, k) * z + 1.0) <= 0.01);
        // conjugate symmetry
        auto up = stieltjes({0.3, 0.2}, d, k);
        auto dn = stieltjes({0.3, -0.2}, d, k);
        CHECK(std::abs(up - std::conj(dn)) <= 1e-14);
        CHECK_THROWS(stieltjes({0.5, 0.0}, d, k));
    }

    // inversion recovers the density at interior points
    for (auto [d, k] : {Case{2, 2}, Case{2, 3}, Case{3, 2}}) {
        auto mu = spectral_measure(d, k);
        double lo = mu.support_lo, hi = mu.support_hi;
        for (double t : {0.25, 0.5, 0.75}) {
            double x = lo + t * (hi - lo);
            double eps = 1e-6;
            double est = stieltjes({x, eps}, d, k).imag() / std::numbers::pi;
            CHECK(std::abs(est - mu.density(x)) <= 1e-4);
        }
    }
}

TEST_CASE("density and measure") {
    // arcsine specialization
    for (int i = 1; i < 50; ++i) {
        double x = -0.98 + 1.96 * i / 49.0;
        double rho = density(x, 1, 2);
        CHECK(std::abs(rho - 1.0 / (std::numbers::pi * std::sqrt(1 - x * x))) <= 1e-12);
    }

    CHECK(atom_mass(2, 2) == doctest::Approx(1.0 / 3));
    CHECK(atom_mass(3, 2) == doctest::Approx(0.5));
    CHECK(atom_mass(2, 3) == 0.0);
    CHECK(atom_mass(2, 5) == 0.0);

    // continuous mass: k/(d+1) below the atom threshold, 1 at or above it
    struct Case {
        int d, k;
    };
    for (auto [d, k] : {Case{2, 2}, Case{3, 2}, Case{3, 3}}) {
        double mass = integrate_density(d, k, [](double) { return 1.0; });
        CHECK(std::abs(mass - static_cast<double>(k) / (d + 1)) <= 1e-8);
    }
    for (auto [d, k] : {Case{1, 2}, Case{2, 3}, Case{2, 5}, Case{1, 4}}) {
        double mass = integrate_density(d, k, [](double) { return 1.0; });
        CHECK(std::abs(mass - 1.0) <= 1e-8);
    }

    // total mass including atoms is one, density nonnegative, support exact
    for (auto [d, k] : {Case{2, 2}, Case{2, 3}, Case{2, 5}, Case{3, 2}, Case{2, 1}}) {
        auto mu = spectral_measure(d, k);
        CHECK(std::abs(mu.total_mass() - 1.0) <= 1e-8);
        for (int i = 0; i <= 20; ++i) {
            double x = mu.support_lo + (mu.support_hi - mu.support_lo) * i / 20.0;
            CHECK(mu.density(x) >= 0.0);
        }
        double q_lo = 4.0 * (k - 1) * d -
                      std::pow(k * mu.support_lo + (d - 1.0), 2);
        double q_hi = 4.0 * (k - 1) * d -
                      std::pow(k * mu.support_hi + (d - 1.0), 2);
        CHECK(std::abs(q_lo) <= 1e-9);
        CHECK(std::abs(q_hi) <= 1e-9);
    }
}

TEST_CASE("numerical atom extraction") {
    CHECK(std::abs(atom_mass_numeric(2, 2) - 1.0 / 3) <= 1e-3);
    CHECK(std::abs(atom_mass_numeric(3, 2) - 0.5) <= 1e-3);
    CHECK(std::abs(atom_mass_numeric(2, 3) - 0.0) <= 1e-3);
    CHECK(std::abs(atom_mass_numeric(2, 5) - 0.0) <= 1e-3);
    CHECK(std::abs(atom_mass_numeric(2, 1) - 2.0 / 3) <= 1e-3);
}

TEST_CASE("moments match the kernel") {
    // arcsine even moments are the normalized central binomials
    auto mu = spectral_measure(1, 2);
    double binom = 1.0;
    for (int m = 0; m <= 5; ++m) {
        if (m > 0) binom *= (2.0 * m) * (2.0 * m - 1) / (m * m) / 4.0;
        CHECK(std::abs(mu.moment(2 * m) - binom) <= 1e-9);
        CHECK(std::abs(mu.moment(2 * m + 1)) <= 1e-9);
    }

    CHECK(verify_moments(2, 3, 10) <= 1e-6);
    CHECK(verify_moments(2, 2, 10) <= 1e-6);
    CHECK(verify_moments(1, 3, 10) <= 1e-6);
    CHECK(verify_moments(2, 1, 10) <= 1e-6);
    CHECK(verify_moments(3, 2, 8) <= 1e-6);
}

TEST_CASE("classification") {
    for (int d = 1; d <= 3; ++d) {
        for (int k = 1; k <= 6; ++k) {
            auto c = classify(d, k);
            if (k <= d + 1)
                CHECK(c.cls == WalkClass::Recurrent);
            else
                CHECK(c.cls == WalkClass::Transient);
        }
    }
    // k = d+1: the endpoint integral diverges numerically
    CHECK(classify(2, 3).endpoint_partial > 1e3);

    // transient: partial kernel sums approach the closed integral
    auto c = classify(2, 5);
    double p = 0.75;
    auto diag = heat_diag_layers(2, 5, p, 202, 200);
    double sum = 0.0;
    for (double v : diag) sum += v;
    CHECK(std::abs(sum - c.integral / (1 - p)) <= 0.05 * std::abs(c.integral / (1 - p)));

    // laziness independence of the trend on truncations
    for (double q : {0.6, 0.75, 0.9}) {
        auto dq = heat_diag_layers(2, 5, q, 202, 200);
        double s = 0.0;
        for (double v : dq) s += v;
        CHECK(std::abs(s * (1 - q) - c.integral) <= 0.05 * std::abs(c.integral));
    }
}

TEST_SUITE_END();
