#pragma once

#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "sbrw/complex.hpp"

namespace sbrw {

// Radius-R truncation of the k-regular arboreal d-complex: sigma0 with k
// cofaces, every new (d-1)-cell gets k-1 further cofaces, for R generations.
// Interior (d-1)-cells have degree k; layer-R cells have degree 1.
struct ArborealTruncation {
    SimplicialComplex X;
    int d, k, radius;
    std::vector<int> layer;  // per canonical (d-1)-cell
    OrientedCell sigma0, sigma1, sigma2;
};

ArborealTruncation build_truncated_T(int d, int k, int R, int64_t max_top_cells = 2000000);

// --- layer-lumped recursions -----------------------------------------------
//
// Orient every layer-g cell as a neighbor of its parent at layer g-1. The
// automorphism group fixing sigma0 is transitive on each layer, so kernels
// against sigma0 are functions of the layer alone and the transition operator
// lumps to an (R+1)-vector recursion:
//   row 0:        p g(0) + (1-p) d g(1)
//   row 0<g<R:    p g(g) + (1-p)/k [ g(g-1) - (d-1) g(g) + (k-1) d g(g+1) ]
//   row R (deg1): p g(R) + (1-p)   [ g(R-1) - (d-1) g(R) ]
// This evaluates kernels on truncations whose explicit cell count would be
// astronomically large; equality with the explicit complex is tested at
// small radius.

// E_n(sigma0, sigma0) on the radius-R truncation, n = 0..N.
std::vector<double> heat_diag_layers(int d, int k, double p, int R, int N);

// Full layer vectors of E_n(., sigma0) when the per-layer values are needed.
std::vector<std::vector<double>> heat_layer_vectors(int d, int k, double p, int R, int N);

struct LayerFirstVisit {
    std::vector<double> F;  // F[n] = F_n(sigma0, sigma0), F[0] = 0
    std::vector<double> U;  // U[n] = F_n(sigma1, sigma0), U[0] = 0
};
LayerFirstVisit first_visit_layers(int d, int k, double p, int R, int N);

// U(z) coefficients on a radius-(N+2) truncation, with the coefficientwise
// residual of the functional equation
//   U = p z U + (1-p) [ z/k - ((d-1)/k) z U + ((k-1)/k) d z U^2 ].
struct USeries {
    std::vector<double> u;  // u[0..N]
    double max_residual;
};
USeries u_series(int d, int k, double p, int N);

// F = p z + (1-p) d z U, to one order beyond U.
std::vector<double> f_from_u(double p, int d, const std::vector<double>& u);

// Coefficient streams straight from the functional equation / return identity
// (no truncation involved); the closed-form Taylor coefficients.
std::vector<double> u_coeffs_closed(int d, int k, double p, int N);
std::vector<double> g_coeffs_closed(int d, int k, double p, int N);

// Closed forms at p = 0. The branch is fixed by U(0) = 0 (evaluated in the
// cancellation-free form 2z / ((d-1)z + k + sqrt(disc))). k = 1 degenerates
// to the linear equation and is handled by the exact rational forms.
std::complex<double> closed_form_U(std::complex<double> z, int d, int k);
std::complex<double> closed_form_G(std::complex<double> z, int d, int k);

// Radius of convergence of G: min{1, k/(d-1+2 sqrt((k-1)d))} for k <= d+1,
// k/(d-1+2 sqrt((k-1)d)) above; 1/d in the degenerate k = 1 case.
double radius_of_convergence(int d, int k);

// Stieltjes transform of the spectral measure, branch fixed by the Herglotz
// property (Im S > 0 on the upper half-plane) and S(z) ~ -1/z at infinity.
// Real z is rejected.
std::complex<double> stieltjes(std::complex<double> z, int d, int k);

// --- the spectral measure ----------------------------------------------------

struct Atom {
    double location;
    double mass;
};

struct SpectralMeasureClosedForm {
    int d, k;
    double support_lo, support_hi;   // endpoints (1-d -+ 2 sqrt((k-1)d))/k
    std::vector<Atom> atoms;         // mass (d+1-k)/(d+1) at 1 iff k < d+1;
                                     // k = 1 also carries 1/(d+1) at -d
    double density(double x) const;
    double moment(int n) const;      // quadrature + atoms
    double total_mass() const { return moment(0); }
};

SpectralMeasureClosedForm spectral_measure(int d, int k);
double density(double x, int d, int k);
std::pair<double, double> support_interval(int d, int k);
double atom_mass(int d, int k);  // the mass at 1

// Numerical estimate of the mass at 1 via -i eps S(1 + i eps) with Richardson
// extrapolation over eps = 1e-2 .. 1e-6. Cross-check only.
double atom_mass_numeric(int d, int k);

// max_n |E_n^0(sigma0,sigma0) - int x^n dmu| over n <= N, kernel side from a
// radius-(N+2) truncation.
double verify_moments(int d, int k, int N);

// Integral of rho(x) f(x) over the support with endpoint-taming substitution
// x = endpoint -+ t^2; adaptive Simpson to `tol`.
double integrate_density(int d, int k, const std::function<double(double)>& f,
                         double tol = 1e-9, double cut_lo = 0.0, double cut_hi = 0.0);

enum class WalkClass { Recurrent, Transient };

struct Classification {
    WalkClass cls;
    // int 1/(1-x) dmu_{d,k}: finite for k > d+1, infinite otherwise
    double integral;
    // for k = d+1: partial integral with endpoint cut 1e-8 (diverging witness)
    double endpoint_partial;
};
Classification classify(int d, int k);

}  // namespace sbrw
