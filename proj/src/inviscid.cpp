#include "tva/inviscid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tva/errors.hpp"

namespace tva {

ModeState difference_mode(const PhysicalParams& p, double r, const ModeData& d, double t) {
    ModeState v = mode_solution(p, r, d, t), w = mode_solution_inviscid(p, r, d, t);
    ModeState u;
    u.t = t;
    u.r = r;
    u.phi = v.phi - w.phi;
    u.phi_t = v.phi_t - w.phi_t;
    u.phi_tt = v.phi_tt - w.phi_tt;
    u.T = v.T - w.T;
    return u;
}

cplx source_term(const PhysicalParams& p, double r, const ModeState& s) {
    const double nu = p.nu_eff(), r2 = r * r;
    return -nu * r2 * s.phi_tt - nu * p.gamma * p.D_th * r2 * r2 * s.phi_t;
}

EnergyParams energy_params(const PhysicalParams& p, double r, double k1) {
    const double nu = p.nu_eff(), g = p.gamma * p.c0 * p.c0, gD = p.gamma * p.D_th, r2 = r * r;
    const double a = gD * gD * p.c0 * p.c0 * r2 + k1 * (g - k1 + nu * gD * r2);
    const double b = k1 * nu + gD * p.c0 * p.c0;
    const double q = g - k1 + 2.0 * nu * gD * r2;
    EnergyParams e;
    e.k1 = k1;
    e.k2 = a * r2 * r2;
    e.k3 = b / a;
    e.k4 = q * r2 - e.k2 * e.k3 * e.k3;
    e.k5 = b * b * r2 * r2 * r2 / q;
    e.k6 = q / (b * r2);
    e.k7 = a - b * b * r2 / q;
    return e;
}

EnergyFunctionals energy_functionals(const PhysicalParams& p, double k1, double r, const ModeState& u) {
    const double nu = p.nu_eff(), g = p.gamma * p.c0 * p.c0, gD = p.gamma * p.D_th, r2 = r * r;
    const EnergyParams k = energy_params(p, r, k1);
    EnergyFunctionals e;
    e.E1 = std::norm(u.phi_tt + gD * r2 * u.phi_t + k1 * r2 * u.phi);
    e.E2 = k1 * (g - k1) * r2 * r2 * std::norm(u.phi + k.k3 * u.phi_t);
    e.E3 = k1 * (g - k1) * (g - k1) * r2 /
           ((gD * gD * p.c0 * p.c0 + k1 * nu * gD) * r2 + k1 * (g - k1)) * std::norm(u.phi_t);
    e.E4 = k.k5 * std::norm(u.phi + k.k6 * u.phi_t);
    e.E5 = k1 * (g - k1) * (g - k1) * r2 * r2 / (g - k1 + 2.0 * nu * gD * r2) * std::norm(u.phi);
    e.Ea = e.E1 + k.k2 * std::norm(u.phi + k.k3 * u.phi_t) + k.k4 * std::norm(u.phi_t);
    e.Eb = e.E1 + k.k5 * std::norm(u.phi + k.k6 * u.phi_t) + k.k7 * r2 * r2 * std::norm(u.phi);
    return e;
}

double energy_rhs(const PhysicalParams& p, double k1, double r, cplx f) {
    const double nu = p.nu_eff(), gD = p.gamma * p.D_th, c2 = p.c0 * p.c0;
    return (2.0 * gD * c2 + k1 * nu) / (4.0 * nu * gD * c2 * r * r) * std::norm(f);
}

double EnergyMargin::worst() const { return std::max(first, second); }

EnergyMargin energy_inequality_check(const PhysicalParams& p, double k1, double r, const ModeData& d,
                                     const std::vector<double>& ts) {
    for (std::size_t i = 1; i < ts.size(); ++i)
        if (!(ts[i] > ts[i - 1])) throw InvalidParameter("time grid must be strictly increasing");
    const std::size_t m = ts.size();
    std::vector<EnergyFunctionals> E(m);
    std::vector<double> rhs(m);
    ModePropagator pv(p, r, Model::Viscous), pi(p, r, Model::Inviscid);
    for (std::size_t i = 0; i < m; ++i) {
        ModeState v = pv.state(d, ts[i]), w = pi.state(d, ts[i]);
        ModeState u;
        u.phi = v.phi - w.phi;
        u.phi_t = v.phi_t - w.phi_t;
        u.phi_tt = v.phi_tt - w.phi_tt;
        E[i] = energy_functionals(p, k1, r, u);
        rhs[i] = energy_rhs(p, k1, r, source_term(p, r, w));
    }
    const double lo = -std::numeric_limits<double>::infinity();
    EnergyMargin out{lo, lo, lo, lo, 0.0};
    for (const auto& e : E) out.scale = std::max({out.scale, e.E1 + e.E2 + e.E3, e.E1 + e.E4 + e.E5, e.Ea});
    auto s1 = [](const EnergyFunctionals& e) { return e.E1 + e.E2 + e.E3; };
    auto s2 = [](const EnergyFunctionals& e) { return e.E1 + e.E4 + e.E5; };
    for (std::size_t i = 1; i + 1 < m; ++i) {
        const double h = ts[i + 1] - ts[i - 1];
        auto lhs = [&](double a, double b) { return 0.5 * (b - a) / h - rhs[i]; };
        out.first = std::max(out.first, lhs(s1(E[i - 1]), s1(E[i + 1])));
        out.second = std::max(out.second, lhs(s2(E[i - 1]), s2(E[i + 1])));
        out.first_exact = std::max(out.first_exact, lhs(E[i - 1].Ea, E[i + 1].Ea));
        out.second_exact = std::max(out.second_exact, lhs(E[i - 1].Eb, E[i + 1].Eb));
    }
    return out;
}

const char* diff_quantity_name(DiffQuantity q) {
    switch (q) {
        case DiffQuantity::U_t: return "u_t";
        case DiffQuantity::LapU: return "lap_u";
        case DiffQuantity::U: return "u";
        case DiffQuantity::TempDiff: return "temp_diff";
    }
    return "";
}

double data_width(const DataSet& data) {
    double a = std::numeric_limits<double>::infinity();
    for (const auto& s : data.items) a = std::min(a, s.width);
    return std::isfinite(a) ? a : 0.0;
}

namespace {

// Integrates per-node values g(r, u, data) over phase space with the slice rule
// (a single direction for radial data).
template <class F>
double phase_integral(const RadialGrid& g, const SliceTransform& tr, int n, int u_points, F&& f) {
    std::vector<double> v(g.r.size());
    if (tr.radial()) {
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(i, tr(g.r[i], 1.0));
        return sphere_area(n) * panel_sum(g, v);
    }
    GaussRule ur = slice_rule(n, u_points);
    for (std::size_t i = 0; i < v.size(); ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k < ur.x.size(); ++k) s += ur.w[k] * f(i, tr(g.r[i], ur.x[k]));
        v[i] = s;
    }
    return panel_sum(g, v);
}

// Same for the L1 norm of a complex node value h(r, u, data).
template <class F>
double phase_l1(const RadialGrid& g, const SliceTransform& tr, int n, int u_points, F&& f) {
    std::vector<cplx> v(g.r.size());
    if (tr.radial()) {
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(i, tr(g.r[i], 1.0));
        return sphere_area(n) * panel_sum_abs(g, v);
    }
    GaussRule ur = slice_rule(n, u_points);
    double s = 0.0;
    for (std::size_t k = 0; k < ur.x.size(); ++k) {
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(i, tr(g.r[i], ur.x[k]));
        s += ur.w[k] * panel_sum_abs(g, v);
    }
    return s;
}

ModeData as_mode(const std::array<cplx, 3>& a) { return {a[0], a[1], a[2]}; }

// Truncation for integrands that are not squared and decay no faster than the
// inviscid modes.
QuadratureRule difference_rule(const PhysicalParams& p, double t, const QuadratureRule& rule, double a) {
    QuadratureRule q = rule;
    if (q.R > 0.0) return q;
    const double G = std::min({p.D_th, 0.5 * (p.gamma - 1.0) * p.D_th, derive_constants(p).Gamma0});
    const double L = std::log(1.0 / rule.tail_tol);
    const double Rt = std::sqrt(L / (G * std::max(t, 1e-12)));
    double R = Rt;
    if (a > 0.0) R = std::min(R, 2.0 * std::sqrt(L) / a);
    q.R = std::max(1.0, R);
    q.R_osc = Rt;
    return q;
}

}  // namespace

std::array<double, 4> supnorm_diff_bounds(const PhysicalParams& p, const DataSet& data, double t,
                                          const QuadratureRule& rule, bool allow_n1) {
    const int n = p.n;
    if (n == 1 && !allow_n1) throw SingularAtOrigin("difference bounds for u and T need n >= 2");
    SliceTransform tr(data, n);
    const double a = data_width(data);
    RadialGrid g = radial_grid(p, std::max(t, 1e-12), n, difference_rule(p, t, rule, a), a);
    std::vector<ModePropagator> pv, pi;
    pv.reserve(g.r.size());
    pi.reserve(g.r.size());
    for (double r : g.r) {
        pv.emplace_back(p, r, Model::Viscous);
        pi.emplace_back(p, r, Model::Inviscid);
    }
    std::array<double, 4> out{};
    for (int q = 0; q < 4; ++q) {
        out[q] = phase_l1(g, tr, n, rule.u_points, [&](std::size_t i, const std::array<cplx, 3>& a) {
            const ModeData d = as_mode(a);
            ModeState v = pv[i].state(d, t), w = pi[i].state(d, t);
            switch (static_cast<DiffQuantity>(q)) {
                case DiffQuantity::U_t: return v.phi_t - w.phi_t;
                case DiffQuantity::LapU: return g.r[i] * g.r[i] * (v.phi - w.phi);
                case DiffQuantity::U: return v.phi - w.phi;
                case DiffQuantity::TempDiff: return v.T - w.T;
            }
            return cplx(0.0);
        });
    }
    return out;
}

double supnorm_diff_bound(const PhysicalParams& p, const DataSet& data, DiffQuantity q, double t,
                          const QuadratureRule& rule, bool allow_n1) {
    const bool regular = q == DiffQuantity::U_t || q == DiffQuantity::LapU;
    return supnorm_diff_bounds(p, data, t, rule, allow_n1 || regular)[static_cast<int>(q)];
}

LimitSweep limit_sweep(const PhysicalParams& base, const std::vector<double>& nus, const DataSet& data,
                       const std::vector<double>& ts, const QuadratureRule& rule, bool allow_n1) {
    LimitSweep s;
    s.nus = nus;
    s.ts = ts;
    for (double nu : nus) {
        PhysicalParams p = base;
        p.nu0 = nu;
        validate(p);
        std::array<double, 4> sup{};
        for (double t : ts) {
            auto b = supnorm_diff_bounds(p, data, t, rule, allow_n1);
            for (int q = 0; q < 4; ++q) sup[q] = std::max(sup[q], b[q]);
        }
        s.sup.push_back(sup);
    }
    for (int q = 0; q < 4; ++q) {
        std::vector<std::pair<double, double>> samples;
        for (std::size_t i = 0; i < nus.size(); ++i) samples.emplace_back(nus[i], s.sup[i][q]);
        s.fit[q] = fit_rate(samples);
    }
    return s;
}

const char* ui_variant_name(UIVariant v) {
    switch (v) {
        case UIVariant::J0: return "j0";
        case UIVariant::J1: return "j1";
        case UIVariant::J2: return "j2";
        case UIVariant::Weighted: return "weighted";
        case UIVariant::SupT: return "sup_t";
    }
    return "";
}

namespace {

// (e^z - 1)/z
cplx expm1_ratio(cplx z) {
    if (std::abs(z) < 1e-3) return 1.0 + z * (0.5 + z * (1.0 / 6.0 + z / 24.0));
    const double x = z.real(), y = z.imag(), s = std::sin(0.5 * y);
    cplx e(std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y));
    return e / z;
}

// \int_0^T |sum_k a_k e^{z_k tau}|^2 dtau
double gram_integral(const std::array<cplx, 3>& a, const std::array<cplx, 3>& z, double T) {
    double s = 0.0;
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) s += (a[k] * std::conj(a[l]) * expm1_ratio((z[k] + std::conj(z[l])) * T)).real();
    return std::max(0.0, s * T);
}

double inviscid_decay_rate(const PhysicalParams& p) {
    return std::min(p.D_th, 0.5 * (p.gamma - 1.0) * p.D_th);
}

}  // namespace

std::vector<double> uniform_integrability_series(const PhysicalParams& p, const DataSet& data, UIVariant v,
                                                 const std::vector<double>& Ts, const QuadratureRule& rule) {
    const int n = p.n;
    if (v == UIVariant::Weighted && n < 2) throw SingularAtOrigin("weighted integrand ~ 1/r near the origin for n = 1");
    SliceTransform tr(data, n);
    const double a = data_width(data);
    const double L = std::log(1.0 / rule.tail_tol);
    std::vector<double> out;
    for (double T : Ts) {
        if (v == UIVariant::SupT) {
            double sup = 0.0;
            std::vector<double> tg = logspace(1e-2, T, 41);
            tg.insert(tg.begin(), 0.0);
            for (double t : tg) {
                RadialGrid g = radial_grid(p, std::max(t, 1e-12), n, difference_rule(p, t, rule, a), a);
                double val = phase_l1(g, tr, n, rule.u_points, [&](std::size_t i, const std::array<cplx, 3>& d) {
                    return mode_solution_inviscid(p, g.r[i], as_mode(d), t).phi_t;
                });
                sup = std::max(sup, val);
            }
            out.push_back(sup);
            continue;
        }
        QuadratureRule q = rule;
        // the time integral does not decay in r, so the data envelope sets R
        q.R = a > 0.0 ? 2.0 * std::sqrt(L) / a : truncation_radius(p, T, rule.tail_tol);
        q.R_osc = std::sqrt(L / (2.0 * inviscid_decay_rate(p) * T));
        RadialGrid g = radial_grid(p, T, n, q, a);
        const int j = v == UIVariant::J0 ? 0 : v == UIVariant::J1 ? 1 : 2;
        double val = phase_integral(g, tr, n, rule.u_points, [&](std::size_t i, const std::array<cplx, 3>& d) {
            const double r = g.r[i];
            const CharRoots cr = inviscid_roots(p, r);
            const auto z = cr.roots();
            const ModeData md = as_mode(d);
            const auto c = modal_coefficients(z, md.phi0, md.phi1, third_datum(p, r, md, Model::Inviscid));
            std::array<cplx, 3> x{}, y{};
            for (int k = 0; k < 3; ++k) {
                if (v == UIVariant::Weighted) {
                    x[k] = c[k] * z[k] * z[k] / r;
                    y[k] = c[k] * z[k] * r;
                } else {
                    x[k] = c[k] * z[k] * z[k] * std::pow(r, j);
                    y[k] = c[k] * z[k] * std::pow(r, j + 2);
                }
            }
            return std::sqrt(gram_integral(x, z, T) + gram_integral(y, z, T));
        });
        out.push_back(val);
    }
    return out;
}

PlateauResult uniform_integrability_plateau(const PhysicalParams& p, const DataSet& data, UIVariant v, double T_max,
                                            const QuadratureRule& rule) {
    auto s = uniform_integrability_series(p, data, v, {0.5 * T_max, T_max}, rule);
    PlateauResult r;
    r.half_value = s[0];
    r.value = s[1];
    r.relative_increase = s[1] > 0.0 ? (s[1] - s[0]) / s[1] : 0.0;
    return r;
}

double uniform_integrability_check(const PhysicalParams& p, const DataSet& data, UIVariant v, double T_max,
                                   const QuadratureRule& rule) {
    PlateauResult r = uniform_integrability_plateau(p, data, v, T_max, rule);
    if (!(r.relative_increase < 1e-3)) throw NotPlateaued(r.relative_increase);
    return r.value;
}

namespace {

std::array<cplx, 3> corrector_forcing(const PhysicalParams& p, double r, const std::array<cplx, 3>& z,
                                      const std::array<cplx, 3>& c) {
    const double r2 = r * r, k = 1.0 + p.beta;
    std::array<cplx, 3> d{};
    for (int j = 0; j < 3; ++j) d[j] = -k * r2 * (z[j] * z[j] + p.gamma * p.D_th * r2 * z[j]) * c[j];
    return d;
}

}  // namespace

cplx wkb_corrector_hat(const PhysicalParams& p, double r, const ModeData& d, double t) {
    if (r == 0.0) return 0.0;
    const auto z = inviscid_roots(p, r).roots();
    const auto c = modal_coefficients(z, d.phi0, d.phi1, third_datum(p, r, d, Model::Inviscid));
    return duhamel_exp_sum(z, z, corrector_forcing(p, r, z, c), t)[0];
}

WkbResult wkb_corrector_error(const PhysicalParams& base, const std::vector<double>& nus, const DataSet& data,
                              double t, const QuadratureRule& rule) {
    const int n = base.n;
    SliceTransform tr(data, n);
    const double a = data_width(data);
    RadialGrid g = radial_grid(base, t, n, difference_rule(base, t, rule, a), a);
    // phi^(0) and the corrector do not depend on nu0
    std::vector<ModePropagator> pi;
    pi.reserve(g.r.size());
    for (double r : g.r) pi.emplace_back(base, r, Model::Inviscid);
    WkbResult res;
    res.nus = nus;
    for (double nu : nus) {
        PhysicalParams p = base;
        p.nu0 = nu;
        validate(p);
        const double k = 1.0 + p.beta;
        std::array<double, 3> acc{};
        for (int which = 0; which < 3; ++which) {
            acc[which] = phase_integral(g, tr, n, rule.u_points, [&](std::size_t i, const std::array<cplx, 3>& a) {
                const double r = g.r[i];
                const ModeData d = as_mode(a);
                const cplx phi = mode_solution(p, r, d, t).phi;
                const cplx phi0 = pi[i].state(d, t).phi;
                if (which == 1) return std::norm(phi - phi0);
                const cplx w1 = r > 0.0 ? wkb_corrector_hat(base, r, d, t) : cplx(0.0);
                if (which == 0) return std::norm(phi - phi0 - std::sqrt(nu) * w1);
                // first order in nu0 also carries the third-datum change -(1+beta) r^2 phi1
                const cplx h = pi[i].evaluate(0.0, 0.0, -k * r * r * d.phi1, t)[0];
                return std::norm(phi - phi0 - nu * (w1 + h));
            });
        }
        res.with_corrector.push_back(std::sqrt(acc[0]));
        res.without_corrector.push_back(std::sqrt(acc[1]));
        res.first_order.push_back(std::sqrt(acc[2]));
    }
    auto fit = [&](const std::vector<double>& v) {
        std::vector<std::pair<double, double>> s;
        for (std::size_t i = 0; i < nus.size(); ++i) s.emplace_back(nus[i], v[i]);
        return fit_rate(s);
    };
    res.fit_with = fit(res.with_corrector);
    res.fit_without = fit(res.without_corrector);
    res.fit_first_order = fit(res.first_order);
    return res;
}

}  // namespace tva
