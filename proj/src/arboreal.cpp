#include "sbrw/arboreal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <stdexcept>

namespace sbrw {

namespace {

void require_dk(int d, int k) {
    if (d < 1 || k < 1) throw std::invalid_argument("arboreal complex needs d >= 1, k >= 1");
}

}  // namespace

ArborealTruncation build_truncated_T(int d, int k, int R, int64_t max_top_cells) {
    require_dk(d, k);
    if (R < 1) throw std::invalid_argument("truncation radius must be >= 1");

    std::vector<std::vector<VertexId>> top;  // the d-cells
    std::vector<VertexId> sigma0(d);
    for (int i = 0; i < d; ++i) sigma0[i] = i;
    VertexId next = d;

    std::vector<std::vector<VertexId>> frontier = {sigma0};
    for (int gen = 1; gen <= R; ++gen) {
        int attach = (gen == 1) ? k : k - 1;
        std::vector<std::vector<VertexId>> new_frontier;
        for (const auto& cell : frontier) {
            for (int a = 0; a < attach; ++a) {
                std::vector<VertexId> tc = cell;
                tc.push_back(next++);
                std::sort(tc.begin(), tc.end());
                if (static_cast<int64_t>(top.size()) >= max_top_cells)
                    throw std::runtime_error(
                        "arboreal truncation exceeds the cell budget; reduce the radius");
                top.push_back(tc);
                // the d new (d-1)-faces (all except `cell`) join the frontier
                for (size_t drop = 0; drop < tc.size(); ++drop) {
                    std::vector<VertexId> f;
                    for (size_t t = 0; t < tc.size(); ++t)
                        if (t != drop) f.push_back(tc[t]);
                    if (f != cell) new_frontier.push_back(std::move(f));
                }
            }
        }
        frontier = std::move(new_frontier);
    }

    ArborealTruncation T{SimplicialComplex::from_maximal_faces(top), d, k, R, {}, {}, {}, {}};

    // layers = BFS distance from sigma0 in the shared-coface graph
    int m = T.X.n_cells(d - 1);
    T.layer.assign(m, -1);
    int i0 = T.X.index_of(Cell(sigma0));
    T.layer[i0] = 0;
    std::queue<int> q;
    q.push(i0);
    while (!q.empty()) {
        int c = q.front();
        q.pop();
        for (int cf : T.X.cofaces(d - 1, c))
            for (int f : T.X.faces(d, cf))
                if (T.layer[f] < 0) {
                    T.layer[f] = T.layer[c] + 1;
                    q.push(f);
                }
    }

    T.sigma0 = OrientedCell(Cell(sigma0), 1);
    auto nb0 = T.X.up_neighbors(T.sigma0);
    std::sort(nb0.begin(), nb0.end());
    T.sigma1 = nb0.front();
    auto nb1 = T.X.up_neighbors(T.sigma1);
    std::sort(nb1.begin(), nb1.end());
    for (const auto& oc : nb1) {
        if (T.layer[T.X.index_of(oc.cell)] == 2) {
            T.sigma2 = oc;
            break;
        }
    }
    return T;
}

namespace {

// One application of the lumped transition operator on layer functions.
std::vector<double> lumped_step(const std::vector<double>& g, int d, int k, double p) {
    const int R = static_cast<int>(g.size()) - 1;
    std::vector<double> out(R + 1);
    out[0] = p * g[0] + (1 - p) * d * (R >= 1 ? g[1] : 0.0);
    for (int l = 1; l < R; ++l)
        out[l] = p * g[l] + (1 - p) / k * (g[l - 1] - (d - 1) * g[l] + (k - 1) * d * g[l + 1]);
    if (R >= 1) out[R] = p * g[R] + (1 - p) * (g[R - 1] - (d - 1) * g[R]);
    return out;
}

}  // namespace

std::vector<std::vector<double>> heat_layer_vectors(int d, int k, double p, int R, int N) {
    require_dk(d, k);
    std::vector<std::vector<double>> out;
    out.reserve(N + 1);
    std::vector<double> g(R + 1, 0.0);
    g[0] = 1.0;
    out.push_back(g);
    for (int n = 1; n <= N; ++n) {
        g = lumped_step(g, d, k, p);
        out.push_back(g);
    }
    return out;
}

std::vector<double> heat_diag_layers(int d, int k, double p, int R, int N) {
    auto vecs = heat_layer_vectors(d, k, p, R, N);
    std::vector<double> diag(N + 1);
    for (int n = 0; n <= N; ++n) diag[n] = vecs[n][0];
    return diag;
}

LayerFirstVisit first_visit_layers(int d, int k, double p, int R, int N) {
    require_dk(d, k);
    LayerFirstVisit out;
    out.F.assign(N + 1, 0.0);
    out.U.assign(N + 1, 0.0);
    if (N < 1) return out;
    std::vector<double> h(R + 1, 0.0);
    h[0] = p;
    if (R >= 1) h[1] = (1 - p) / k;
    out.F[1] = h[0];
    out.U[1] = R >= 1 ? h[1] : 0.0;
    for (int n = 2; n <= N; ++n) {
        h[0] = 0.0;  // intermediate visits to sigma0 are forbidden
        h = lumped_step(h, d, k, p);
        out.F[n] = h[0];
        out.U[n] = R >= 1 ? h[1] : 0.0;
    }
    return out;
}

USeries u_series(int d, int k, double p, int N) {
    int R = N + 2;
    auto fv = first_visit_layers(d, k, p, R, N);
    USeries out{fv.U, 0.0};
    // functional-equation residual, coefficientwise
    const auto& u = out.u;
    for (int n = 1; n <= N; ++n) {
        double sq = 0.0;
        for (int i = 1; i <= n - 2; ++i) sq += u[i] * u[n - 1 - i];
        double rhs = p * u[n - 1] +
                     (1 - p) * ((n == 1 ? 1.0 / k : 0.0) - (d - 1.0) / k * u[n - 1] +
                                (k - 1.0) * d / k * sq);
        out.max_residual = std::max(out.max_residual, std::abs(u[n] - rhs));
    }
    return out;
}

std::vector<double> f_from_u(double p, int d, const std::vector<double>& u) {
    std::vector<double> f(u.size() + 1, 0.0);
    if (f.size() > 1) f[1] = p;
    for (size_t n = 2; n < f.size(); ++n) f[n] = (1 - p) * d * u[n - 1];
    return f;
}

std::vector<double> u_coeffs_closed(int d, int k, double p, int N) {
    require_dk(d, k);
    std::vector<double> u(N + 1, 0.0);
    for (int n = 1; n <= N; ++n) {
        double sq = 0.0;
        for (int i = 1; i <= n - 2; ++i) sq += u[i] * u[n - 1 - i];
        u[n] = p * u[n - 1] + (1 - p) * ((n == 1 ? 1.0 / k : 0.0) -
                                         (d - 1.0) / k * u[n - 1] + (k - 1.0) * d / k * sq);
    }
    return u;
}

std::vector<double> g_coeffs_closed(int d, int k, double p, int N) {
    auto u = u_coeffs_closed(d, k, p, N);
    auto f = f_from_u(p, d, u);
    std::vector<double> g(N + 1, 0.0);
    g[0] = 1.0;
    for (int n = 1; n <= N; ++n) {
        double s = 0.0;
        for (int j = 1; j <= n; ++j) s += f[j] * g[n - j];
        g[n] = s;  // (1 - F) G = 1
    }
    return g;
}

std::complex<double> closed_form_U(std::complex<double> z, int d, int k) {
    require_dk(d, k);
    if (k == 1) return z / (1.0 + (d - 1.0) * z);
    std::complex<double> b = (d - 1.0) * z + static_cast<double>(k);
    std::complex<double> disc = b * b - 4.0 * (k - 1.0) * d * z * z;
    return 2.0 * z / (b + std::sqrt(disc));
}

std::complex<double> closed_form_G(std::complex<double> z, int d, int k) {
    return 1.0 / (1.0 - static_cast<double>(d) * z * closed_form_U(z, d, k));
}

double radius_of_convergence(int d, int k) {
    require_dk(d, k);
    if (k == 1) return 1.0 / d;
    double r = k / (d - 1.0 + 2.0 * std::sqrt((k - 1.0) * d));
    return k <= d + 1 ? std::min(1.0, r) : r;
}

std::complex<double> stieltjes(std::complex<double> z, int d, int k) {
    require_dk(d, k);
    if (z.imag() == 0.0) throw std::invalid_argument("stieltjes: z must be non-real");
    if (z.imag() < 0.0) return std::conj(stieltjes(std::conj(z), d, k));
    if (k == 1) {
        // two atoms: d/(d+1) at 1 and 1/(d+1) at -d
        return -(z + (d - 1.0)) / ((z - 1.0) * (z + static_cast<double>(d)));
    }
    std::complex<double> den_base = (k - 2.0) * z - (d - 1.0);
    std::complex<double> disc = (d - 1.0 + static_cast<double>(k) * z);
    disc = disc * disc - 4.0 * (k - 1.0) * d;
    std::complex<double> root = std::sqrt(disc);
    std::complex<double> s1 = -2.0 * (k - 1.0) / (den_base + root);
    std::complex<double> s2 = -2.0 * (k - 1.0) / (den_base - root);
    bool ok1 = s1.imag() > 0.0, ok2 = s2.imag() > 0.0;
    if (ok1 != ok2) return ok1 ? s1 : s2;
    // ambiguous at roundoff level: fall back to the -1/z normalization
    return std::abs(s1 * z + 1.0) <= std::abs(s2 * z + 1.0) ? s1 : s2;
}

double SpectralMeasureClosedForm::density(double x) const {
    if (x <= support_lo || x >= support_hi) return 0.0;
    double q = 4.0 * (k - 1.0) * d - (k * x + (d - 1.0)) * (k * x + (d - 1.0));
    if (q <= 0.0) return 0.0;
    return std::sqrt(q) / (2.0 * std::numbers::pi * (d + x) * (1.0 - x));
}

double SpectralMeasureClosedForm::moment(int n) const {
    double m = integrate_density(d, k, [n](double x) { return std::pow(x, n); });
    for (const auto& a : atoms) m += a.mass * std::pow(a.location, n);
    return m;
}

std::pair<double, double> support_interval(int d, int k) {
    require_dk(d, k);
    double s = 2.0 * std::sqrt((k - 1.0) * d);
    return {(1.0 - d - s) / k, (1.0 - d + s) / k};
}

double atom_mass(int d, int k) {
    require_dk(d, k);
    return k < d + 1 ? static_cast<double>(d + 1 - k) / (d + 1) : 0.0;
}

SpectralMeasureClosedForm spectral_measure(int d, int k) {
    auto [lo, hi] = support_interval(d, k);
    SpectralMeasureClosedForm m{d, k, lo, hi, {}};
    if (k < d + 1) m.atoms.push_back({1.0, atom_mass(d, k)});
    // k = 1: the continuous part degenerates to a point and the measure is a
    // pair of atoms (see the rational G); the second one sits at -d.
    if (k == 1) m.atoms.push_back({-static_cast<double>(d), 1.0 / (d + 1)});
    return m;
}

double density(double x, int d, int k) { return spectral_measure(d, k).density(x); }

double atom_mass_numeric(int d, int k) {
    double est = 0.0, prev = 0.0;
    bool have_prev = false;
    for (double eps = 1e-2; eps >= 0.9e-6; eps /= 10.0) {
        std::complex<double> h = -std::complex<double>(0.0, 1.0) * eps *
                                 stieltjes(std::complex<double>(1.0, eps), d, k);
        double v = h.real();
        est = have_prev ? (10.0 * v - prev) / 9.0 : v;  // Richardson, error O(eps)
        prev = v;
        have_prev = true;
    }
    return est;
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0) return left + right;
    if (std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    if (b <= a) return 0.0;
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

double integrate_density(int d, int k, const std::function<double(double)>& f, double tol,
                         double cut_lo, double cut_hi) {
    require_dk(d, k);
    if (k == 1) return 0.0;  // zero-width support
    auto [a, b] = support_interval(d, k);
    double mid = 0.5 * (a + b);
    // sqrt(4(k-1)d - (kx+d-1)^2) = k sqrt((x-a)(b-x))
    const double twopi = 2.0 * std::numbers::pi;
    // The density poles at -d and 1 can coincide with the endpoints (a = -d
    // exactly for (d,k) = (1,2), b = 1 exactly for k = d+1); cancel the t^2
    // symbolically in those cases instead of evaluating 0/0.
    const bool pole_lo = (d + a) < 1e-14;
    const bool pole_hi = (1.0 - b) < 1e-14;
    // left half with x = a + t^2
    auto left = [&](double t) {
        double x = a + t * t;
        double w = k * std::sqrt(std::max(0.0, b - x));
        double num = 2.0 * w * f(x);
        double den = twopi * (1.0 - x);
        if (pole_lo) return num / den;  // (d+x) = t^2 cancels
        return num * t * t / (den * (d + x));
    };
    // right half with x = b - t^2
    auto right = [&](double t) {
        double x = b - t * t;
        double w = k * std::sqrt(std::max(0.0, x - a));
        double num = 2.0 * w * f(x);
        double den = twopi * (d + x);
        if (pole_hi) return num / den;  // (1-x) = t^2 cancels
        return num * t * t / (den * (1.0 - x));
    };
    double lo_t = std::sqrt(std::max(0.0, mid - a - cut_lo));
    double hi_t = std::sqrt(std::max(0.0, b - mid - cut_hi));
    double from_lo = std::sqrt(cut_lo), from_hi = std::sqrt(cut_hi);
    return integrate(left, from_lo, lo_t, tol) + integrate(right, from_hi, hi_t, tol);
}

double verify_moments(int d, int k, int N) {
    auto diag = heat_diag_layers(d, k, 0.0, N + 2, N);
    auto mu = spectral_measure(d, k);
    double worst = 0.0;
    for (int n = 0; n <= N; ++n) worst = std::max(worst, std::abs(diag[n] - mu.moment(n)));
    return worst;
}

Classification classify(int d, int k) {
    require_dk(d, k);
    auto inv = [](double x) { return 1.0 / (1.0 - x); };
    if (k < d + 1)
        return {WalkClass::Recurrent, std::numeric_limits<double>::infinity(), 0.0};
    if (k == d + 1) {
        // right endpoint is 1 and the integrand is (1-x)^{-3/2}-singular; the
        // cut integral is a divergence witness, so a loose tolerance suffices
        double partial = integrate_density(d, k, inv, 1e-3, 0.0, 1e-8);
        return {WalkClass::Recurrent, std::numeric_limits<double>::infinity(), partial};
    }
    return {WalkClass::Transient, integrate_density(d, k, inv), 0.0};
}

}  // namespace sbrw
