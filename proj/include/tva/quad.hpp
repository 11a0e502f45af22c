#pragma once

#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "tva/params.hpp"

namespace tva {

double sphere_area(int n);

// Nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> x, w;
};

GaussRule gauss_legendre(int m);
// weight (1-u)^a (1+u)^b
GaussRule gauss_jacobi(int m, double a, double b);

// Nodes u in [-1,1] with weights of |S^{n-2}|(1-u^2)^{(n-3)/2} du; the weights
// sum to |S^{n-1}|. n = 1 gives u = -1, 1 with unit weights.
GaussRule slice_rule(int n, int m);

struct QuadratureRule {
    int points = 8;             // Gauss nodes per panel
    double panels_scale = 1.0;  // multiplies the panel count
    int min_panels = 64;
    int u_points = 8;           // slice nodes for n >= 2
    double tail_tol = 1e-16;
    double R = 0.0;             // 0: chosen by truncation_radius
    double R_osc = 0.0;         // > 0: oscillation-aware panels only on [0, R_osc], coarse beyond
};

// Smallest R with e^{-2 Gamma_min R^2 t} < tol, floored at 1. When data_width > 0
// the radius is also capped by where the Gaussian data envelope drops below tol.
double truncation_radius(const PhysicalParams& p, double t, double tol, double data_width = 0.0);

// sqrt(ln(1/tol) / (2 Gamma_min t)) without the floor: beyond it the squared
// envelope is below tol and oscillation-aware panels are unnecessary.
double envelope_radius(const PhysicalParams& p, double t, double tol);

// Composite Gauss-Legendre nodes on [0, R]. Panel width at most a quarter period
// of sin(sqrt(gamma) c0 r t) for t > 1, a fixed 256 panels for t <= 1.
// Weights include r^{n-1} but not the sphere area.
struct RadialGrid {
    std::vector<double> r, w;
    std::vector<double> edges;  // panel endpoints
    int points = 8;
    int n = 1;
    double R = 1.0;
};

RadialGrid radial_grid(const PhysicalParams& p, double t, int n, const QuadratureRule& rule, double data_width = 0.0);

// Sums per panel in node order, then pairwise across panels.
double panel_sum(const RadialGrid& g, const std::vector<double>& values);

// Integral of |h| r^{n-1} from node values of h. Within a panel where h has a
// single phase, the interpolant is split at its sign changes so the kinks of |h|
// fall on subinterval ends; otherwise the plain panel rule is used.
double panel_sum_abs(const RadialGrid& g, const std::vector<std::complex<double>>& values);

using RadialFn = std::function<double(double)>;           // |m(r)|
using SliceFn = std::function<double(double, double)>;    // |f(r, u)|

double l2_norm_radial(const RadialFn& m, int n, const RadialGrid& g);
double l1_norm_radial(const RadialFn& m, int n, const RadialGrid& g);
double l2_norm_slice(const SliceFn& f, int n, const RadialGrid& g, int u_points);
double l1_norm_slice(const SliceFn& f, int n, const RadialGrid& g, int u_points);

// Same with the grid chosen from (p, t, rule); throws TailNotNegligible when the
// integrand at R is not negligible.
double l2_norm_radial(const RadialFn& m, int n, const PhysicalParams& p, double t, const QuadratureRule& rule = {});
double l1_norm_radial(const RadialFn& m, int n, const PhysicalParams& p, double t, const QuadratureRule& rule = {});
double l2_norm_slice(const SliceFn& f, int n, const PhysicalParams& p, double t, const QuadratureRule& rule = {});

double reference_rate(int n, double t);

struct RateFitResult {
    double slope = 0.0, intercept = 0.0, max_residual = 0.0;
    double t_min = 0.0, t_max = 0.0;
    bool logarithmic_suspect = false;
};

// Least squares of log value against log t. Needs >= 5 samples over >= 2 decades.
RateFitResult fit_rate(const std::vector<std::pair<double, double>>& samples);

std::vector<double> logspace(double a, double b, int count);

}  // namespace tva
