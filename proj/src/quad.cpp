#include "tva/quad.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include <Eigen/Eigenvalues>

#include "tva/errors.hpp"

namespace tva {

namespace {

constexpr double kPi = 3.14159265358979323846;

double pairwise(const double* v, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    std::size_t h = n / 2;
    return pairwise(v, h) + pairwise(v + h, n - h);
}

// Golub-Welsch for the Jacobi weight; mu0 is the total mass of the weight.
GaussRule golub_welsch(int m, double a, double b) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m, m);
    for (int k = 0; k < m; ++k) {
        double s = 2.0 * k + a + b;
        J(k, k) = (s == 0.0 || s + 2.0 == 0.0) ? (b - a) / (a + b + 2.0) : (b * b - a * a) / (s * (s + 2.0));
        if (k + 1 < m) {
            double kk = k + 1.0, s1 = 2.0 * kk + a + b;
            double num = 4.0 * kk * (kk + a) * (kk + b) * (kk + a + b);
            double den = s1 * s1 * (s1 + 1.0) * (s1 - 1.0);
            J(k, k + 1) = J(k + 1, k) = std::sqrt(num / den);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    double mu0 = std::pow(2.0, a + b + 1.0) * std::tgamma(a + 1.0) * std::tgamma(b + 1.0) / std::tgamma(a + b + 2.0);
    GaussRule g;
    for (int k = 0; k < m; ++k) {
        g.x.push_back(es.eigenvalues()(k));
        double v = es.eigenvectors()(0, k);
        g.w.push_back(mu0 * v * v);
    }
    return g;
}

}  // namespace

double sphere_area(int n) {
    if (n == 1) return 2.0;
    return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

GaussRule gauss_legendre(int m) {
    static std::mutex mu;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    GaussRule g = golub_welsch(m, 0.0, 0.0);
    // symmetrize against eigen-solver rounding
    for (int k = 0; k < m / 2; ++k) {
        double x = 0.5 * (g.x[m - 1 - k] - g.x[k]), w = 0.5 * (g.w[k] + g.w[m - 1 - k]);
        g.x[k] = -x;
        g.x[m - 1 - k] = x;
        g.w[k] = g.w[m - 1 - k] = w;
    }
    if (m % 2) g.x[m / 2] = 0.0;
    cache[m] = g;
    return g;
}

GaussRule gauss_jacobi(int m, double a, double b) { return golub_welsch(m, a, b); }

GaussRule slice_rule(int n, int m) {
    GaussRule g;
    if (n == 1) {
        g.x = {-1.0, 1.0};
        g.w = {1.0, 1.0};
        return g;
    }
    if (n == 2) {
        for (int k = 1; k <= m; ++k) {
            g.x.push_back(std::cos((2.0 * k - 1.0) * kPi / (2.0 * m)));
            g.w.push_back(2.0 * kPi / m);
        }
        return g;
    }
    double e = 0.5 * (n - 3);
    g = e == 0.0 ? gauss_legendre(m) : gauss_jacobi(m, e, e);
    const double s = sphere_area(n - 1);
    for (double& w : g.w) w *= s;
    return g;
}

double truncation_radius(const PhysicalParams& p, double t, double tol, double data_width) {
    DerivedConstants g = derive_constants(p);
    const double gmin = std::min(p.D_th, g.Gamma0);
    const double L = std::log(1.0 / tol);
    double R = std::sqrt(L / (2.0 * gmin * t));
    if (data_width > 0.0) R = std::min(R, std::sqrt(2.0 * L) / data_width);
    return std::max(1.0, R);
}

double envelope_radius(const PhysicalParams& p, double t, double tol) {
    const double gmin = std::min(p.D_th, derive_constants(p).Gamma0);
    return std::sqrt(std::log(1.0 / tol) / (2.0 * gmin * t));
}

RadialGrid radial_grid(const PhysicalParams& p, double t, int n, const QuadratureRule& rule, double data_width) {
    RadialGrid g;
    g.points = rule.points;
    g.n = n;
    g.R = rule.R > 0.0 ? rule.R : truncation_radius(p, t, rule.tail_tol, data_width);
    const double Rf = rule.R_osc > 0.0 ? std::min(rule.R_osc, g.R) : g.R;
    int panels;
    if (t <= 1.0) {
        panels = 256;
    } else {
        double h = (kPi / 4.0) / (std::sqrt(p.gamma) * p.c0 * t);
        panels = std::max(rule.min_panels, static_cast<int>(std::ceil(Rf / h)));
    }
    panels = static_cast<int>(std::ceil(panels * rule.panels_scale));
    const int coarse = Rf < g.R ? static_cast<int>(std::ceil(rule.min_panels * rule.panels_scale)) : 0;
    const GaussRule gl = gauss_legendre(rule.points);
    g.r.reserve(static_cast<std::size_t>(panels + coarse) * rule.points);
    g.w.reserve(g.r.capacity());
    g.edges.push_back(0.0);
    auto add = [&](double a, double b, int count) {
        const double h = (b - a) / count;
        for (int k = 0; k < count; ++k) {
            double mid = a + (k + 0.5) * h;
            g.edges.push_back(k + 1 == count ? b : a + (k + 1) * h);
            for (int j = 0; j < rule.points; ++j) {
                double r = mid + 0.5 * h * gl.x[j];
                g.r.push_back(r);
                g.w.push_back(0.5 * h * gl.w[j] * std::pow(r, n - 1));
            }
        }
    };
    add(0.0, Rf, panels);
    if (coarse) add(Rf, g.R, coarse);
    return g;
}

double panel_sum(const RadialGrid& g, const std::vector<double>& values) {
    const std::size_t P = g.r.size() / g.points;
    std::vector<double> per(P);
    for (std::size_t k = 0; k < P; ++k) {
        double s = 0.0;
        for (int j = 0; j < g.points; ++j) {
            std::size_t i = k * g.points + j;
            s += g.w[i] * values[i];
        }
        per[k] = s;
    }
    return pairwise(per.data(), per.size());
}

namespace {

// |p| r^{n-1} over one panel, p the interpolant of real node values s.
double panel_abs(const GaussRule& gl, const std::vector<double>& bw, const double* s, double a, double b, int n) {
    const int m = static_cast<int>(gl.x.size());
    auto interp = [&](double x) {
        double num = 0.0, den = 0.0;
        for (int j = 0; j < m; ++j) {
            const double d = x - gl.x[j];
            if (d == 0.0) return s[j];
            num += bw[j] / d * s[j];
            den += bw[j] / d;
        }
        return num / den;
    };
    std::vector<double> cuts{-1.0};
    const int samples = 8 * m;
    double x0 = -1.0, f0 = interp(x0);
    for (int k = 1; k <= samples; ++k) {
        const double x1 = -1.0 + 2.0 * k / samples, f1 = interp(x1);
        if ((f0 < 0.0 && f1 > 0.0) || (f0 > 0.0 && f1 < 0.0)) {
            double lo = x0, hi = x1, flo = f0;
            for (int it = 0; it < 60 && hi - lo > 1e-15; ++it) {
                const double mid = 0.5 * (lo + hi), fm = interp(mid);
                if ((fm < 0.0) == (flo < 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            cuts.push_back(0.5 * (lo + hi));
        }
        x0 = x1;
        f0 = f1;
    }
    cuts.push_back(1.0);
    const double hh = 0.5 * (b - a);
    double total = 0.0;
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
        const double lo = cuts[c], hi = cuts[c + 1], half = 0.5 * (hi - lo);
        double part = 0.0;
        for (int j = 0; j < m; ++j) {
            const double x = lo + half * (gl.x[j] + 1.0);
            const double r = a + hh * (x + 1.0);
            part += gl.w[j] * std::abs(interp(x)) * std::pow(r, n - 1);
        }
        total += half * part;
    }
    return hh * total;
}

}  // namespace

double panel_sum_abs(const RadialGrid& g, const std::vector<std::complex<double>>& values) {
    const int m = g.points;
    const std::size_t P = g.r.size() / m;
    if (g.edges.size() != P + 1) throw InvalidParameter("grid without panel edges");
    const GaussRule gl = gauss_legendre(m);
    std::vector<double> bw(m, 1.0);
    for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k)
            if (k != j) bw[j] /= gl.x[j] - gl.x[k];
    std::vector<double> per(P), s(m);
    for (std::size_t p = 0; p < P; ++p) {
        const std::complex<double>* h = values.data() + p * m;
        int top = 0;
        for (int j = 1; j < m; ++j)
            if (std::abs(h[j]) > std::abs(h[top])) top = j;
        const double big = std::abs(h[top]);
        if (big == 0.0) continue;
        const std::complex<double> e = std::conj(h[top]) / big;
        double off = 0.0;
        for (int j = 0; j < m; ++j) {
            const std::complex<double> z = e * h[j];
            s[j] = z.real();
            off = std::max(off, std::abs(z.imag()));
        }
        if (off > 1e-12 * big) {
            double sum = 0.0;
            for (int j = 0; j < m; ++j) sum += g.w[p * m + j] * std::abs(h[j]);
            per[p] = sum;
        } else {
            per[p] = panel_abs(gl, bw, s.data(), g.edges[p], g.edges[p + 1], g.n);
        }
    }
    return pairwise(per.data(), per.size());
}

double l2_norm_radial(const RadialFn& m, int n, const RadialGrid& g) {
    std::vector<double> v(g.r.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        double a = m(g.r[i]);
        v[i] = a * a;
    }
    return std::sqrt(sphere_area(n) * panel_sum(g, v));
}

double l1_norm_radial(const RadialFn& m, int n, const RadialGrid& g) {
    std::vector<double> v(g.r.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::abs(m(g.r[i]));
    return sphere_area(n) * panel_sum(g, v);
}

double l2_norm_slice(const SliceFn& f, int n, const RadialGrid& g, int u_points) {
    GaussRule ur = slice_rule(n, u_points);
    std::vector<double> v(g.r.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k < ur.x.size(); ++k) {
            double a = f(g.r[i], ur.x[k]);
            s += ur.w[k] * a * a;
        }
        v[i] = s;
    }
    return std::sqrt(panel_sum(g, v));
}

double l1_norm_slice(const SliceFn& f, int n, const RadialGrid& g, int u_points) {
    GaussRule ur = slice_rule(n, u_points);
    std::vector<double> v(g.r.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k < ur.x.size(); ++k) s += ur.w[k] * std::abs(f(g.r[i], ur.x[k]));
        v[i] = s;
    }
    return panel_sum(g, v);
}

namespace {

void check_tail(double edge, double total, double tol) {
    if (edge > std::max(tol * total, 1e-300)) throw TailNotNegligible("integrand not negligible at the truncation radius");
}

}  // namespace

double l2_norm_radial(const RadialFn& m, int n, const PhysicalParams& p, double t, const QuadratureRule& rule) {
    RadialGrid g = radial_grid(p, t, n, rule);
    double v = l2_norm_radial(m, n, g);
    double a = m(g.R);
    check_tail(sphere_area(n) * a * a * std::pow(g.R, n), v * v, 1e-12);
    return v;
}

double l1_norm_radial(const RadialFn& m, int n, const PhysicalParams& p, double t, const QuadratureRule& rule) {
    RadialGrid g = radial_grid(p, t, n, rule);
    double v = l1_norm_radial(m, n, g);
    check_tail(sphere_area(n) * std::abs(m(g.R)) * std::pow(g.R, n), v, 1e-12);
    return v;
}

double l2_norm_slice(const SliceFn& f, int n, const PhysicalParams& p, double t, const QuadratureRule& rule) {
    RadialGrid g = radial_grid(p, t, n, rule);
    return l2_norm_slice(f, n, g, rule.u_points);
}

double reference_rate(int n, double t) {
    if (n == 1) return std::sqrt(t);
    if (n == 2) return std::sqrt(std::log(t));
    return std::pow(t, 0.5 - 0.25 * n);
}

namespace {

// Least squares of y on (1, x, ..., x^deg); returns coefficients and max |residual|.
std::pair<Eigen::VectorXd, double> poly_fit(const Eigen::VectorXd& x, const Eigen::VectorXd& y, int deg) {
    Eigen::MatrixXd V(x.size(), deg + 1);
    for (int i = 0; i < x.size(); ++i)
        for (int k = 0; k <= deg; ++k) V(i, k) = std::pow(x(i), k);
    Eigen::VectorXd c = V.colPivHouseholderQr().solve(y);
    return {c, (V * c - y).cwiseAbs().maxCoeff()};
}

}  // namespace

RateFitResult fit_rate(const std::vector<std::pair<double, double>>& samples) {
    if (samples.size() < 5) throw InsufficientWindow("fewer than 5 samples");
    double tmin = samples.front().first, tmax = tmin;
    for (const auto& [t, v] : samples) {
        if (!(t > 0.0) || !(v > 0.0)) throw InsufficientWindow("non-positive sample");
        tmin = std::min(tmin, t);
        tmax = std::max(tmax, t);
    }
    if (tmax / tmin < 100.0 * (1.0 - 1e-9)) throw InsufficientWindow("window spans less than two decades");
    Eigen::VectorXd x(samples.size()), y(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        x(i) = std::log(samples[i].first);
        y(i) = std::log(samples[i].second);
    }
    auto [c1, res1] = poly_fit(x, y, 1);
    RateFitResult r;
    r.slope = c1(1);
    r.intercept = c1(0);
    r.max_residual = res1;
    r.t_min = tmin;
    r.t_max = tmax;
    if (std::abs(r.slope) < 0.1) {
        auto [c2, res2] = poly_fit(x, y, 2);
        r.logarithmic_suspect = res1 > 0.0 && res2 < 0.25 * res1 && c2(2) != 0.0;
    }
    return r;
}

std::vector<double> logspace(double a, double b, int count) {
    std::vector<double> v(count);
    const double la = std::log10(a), lb = std::log10(b);
    for (int i = 0; i < count; ++i) v[i] = std::pow(10.0, count == 1 ? la : la + (lb - la) * i / (count - 1));
    return v;
}

}  // namespace tva
