#include <doctest.h>

#include <cmath>

#include "tva/errors.hpp"
#include "tva/inviscid.hpp"

using namespace tva;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

DataSet zero_data() {
    DataSet d = gaussian_phi1();
    d.items[0].amplitude = 0.0;
    return d;
}

}  // namespace

TEST_CASE("difference starts from the third-datum gap") {
    const PhysicalParams p = canon();
    const ModeData d{0.3, 1.0, 0.4};
    const double r = 0.5;
    const ModeState u = difference_mode(p, r, d, 0.0);
    CHECK(std::abs(u.phi) < 1e-14);
    CHECK(std::abs(u.phi_t) < 1e-14);
    CHECK(rel(u.phi_tt, -p.nu_eff() * r * r * d.phi1) < 1e-10);
    CHECK(std::abs(u.T) < 1e-12);

    PhysicalParams q = p;
    double prev = 1e300;
    for (double nu : {1e-2, 1e-4, 1e-6}) {
        q.nu0 = nu;
        const double m = std::abs(difference_mode(q, r, d, 2.0).phi);
        CHECK(m < prev);
        prev = m;
    }
    CHECK(prev < 1e-5);
}

TEST_CASE("difference solves the forced viscous equation") {
    const PhysicalParams p = canon();
    const ModeData d{0.3, 1.0, 0.4};
    for (double r : {0.5, 2.0}) {
        const double t = 2.0;
        const ModePropagator inv(p, r, Model::Inviscid);
        auto f = [&](double s) { return source_term(p, r, inv.state(d, s)); };
        const auto y = rk4_solve(cubic_coeffs(p, r), {0.0, 0.0, -p.nu_eff() * r * r * d.phi1}, t, 20000, f);
        const ModeState u = difference_mode(p, r, d, t);
        CHECK(rel(y[0], u.phi) < 1e-7);
        CHECK(rel(y[1], u.phi_t) < 1e-7);
        CHECK(rel(y[2], u.phi_tt) < 1e-7);

        // residual of the forced equation with the analytic derivatives
        const Cubic c = cubic_coeffs(p, r);
        const auto v = ModePropagator(p, r).evaluate(d.phi0, d.phi1, third_datum(p, r, d), t);
        const auto w = inv.evaluate(d.phi0, d.phi1, third_datum(p, r, d, Model::Inviscid), t);
        std::array<cplx, 4> du;
        for (int k = 0; k < 4; ++k) du[k] = v[k] - w[k];
        const cplx lhs = du[3] + c.c2 * du[2] + c.c1 * du[1] + c.c0 * du[0];
        CHECK(std::abs(lhs - f(t)) <= 1e-8 * std::max(1.0, std::abs(f(t))));
    }
}

TEST_CASE("source term") {
    PhysicalParams p = canon();
    ModeState s;
    s.phi_t = cplx(0.3, -0.1);
    s.phi_tt = cplx(-1.0, 0.2);
    CHECK(source_term(p, 0.0, s) == cplx(0.0));
    const cplx f1 = source_term(p, 0.7, s);
    p.nu0 *= 3.0;
    CHECK(rel(source_term(p, 0.7, s), 3.0 * f1) < 1e-15);
}

TEST_CASE("energy parameter invariants") {
    const PhysicalParams p = canon();
    const double g = p.gamma * p.c0 * p.c0, gD = p.gamma * p.D_th, nu = p.nu_eff();
    for (double frac : {0.1, 0.2, 0.3, 0.5, 0.9})
        for (double r : {0.1, 1.0, 10.0}) {
            const double k1 = frac * (p.gamma - 1.0) * p.c0 * p.c0, r2 = r * r;
            const EnergyParams e = energy_params(p, r, k1);
            const double b4 = (k1 * nu + gD * p.c0 * p.c0) * r2 * r2;
            CHECK(e.k2 * e.k3 == doctest::Approx(b4).epsilon(1e-13));
            CHECK(e.k5 * e.k6 == doctest::Approx(b4).epsilon(1e-13));
            CHECK(e.k5 * e.k6 * e.k6 == doctest::Approx((g - k1 + 2.0 * nu * gD * r2) * r2).epsilon(1e-13));
            CHECK(e.k7 >= k1 * (g - k1) * (g - k1) / (g - k1 + 2.0 * nu * gD * r2) * (1.0 - 1e-13));
        }
    CHECK(default_k1(p) == doctest::Approx(0.2));
}

TEST_CASE("energy functionals") {
    const PhysicalParams p = canon();
    const double k1 = default_k1(p);
    const EnergyFunctionals z = energy_functionals(p, k1, 0.5, ModeState{});
    CHECK(z.E1 == 0.0);
    CHECK(z.E2 == 0.0);
    CHECK(z.E3 == 0.0);
    CHECK(z.E4 == 0.0);
    CHECK(z.E5 == 0.0);

    ModeState u;
    u.phi = cplx(0.3, 0.2);
    u.phi_t = cplx(-0.5, 0.1);
    u.phi_tt = cplx(0.9, -0.4);
    const double r = 0.5, r2 = r * r, g = 1.4;
    const EnergyFunctionals e = energy_functionals(p, k1, r, u);
    for (double v : {e.E1, e.E2, e.E3, e.E4, e.E5}) CHECK(v >= 0.0);
    const double coef = k1 * (g - k1) * (g - k1) * r2 / ((1.4 * 1.4 * 0.01 + k1 * 0.2 * 0.14) * r2 + k1 * (g - k1));
    CHECK(e.E3 == doctest::Approx(coef * std::norm(u.phi_t)).epsilon(1e-13));
    // both completions of the square describe the same quadratic form, which
    // the displayed sums bound from below
    CHECK(e.Ea == doctest::Approx(e.Eb).epsilon(1e-12));
    CHECK(e.E1 + e.E2 + e.E3 <= e.Ea * (1.0 + 1e-13));
    CHECK(e.E1 + e.E4 + e.E5 <= e.Eb * (1.0 + 1e-13));
}

TEST_CASE("energy inequality check mechanics") {
    const PhysicalParams p = canon();
    std::vector<double> ts;
    for (int i = 0; i < 200; ++i) ts.push_back(20.0 * i / 199.0);
    const EnergyMargin z = energy_inequality_check(p, 0.2, 0.3, ModeData{}, ts);
    CHECK(z.worst() <= 0.0);
    CHECK(z.scale == 0.0);
    std::vector<double> bad{0.0, 1.0, 1.0};
    CHECK_THROWS_AS(energy_inequality_check(p, 0.2, 0.3, ModeData{0.0, 1.0, 0.0}, bad), InvalidParameter);

    // within the admissible k1 range for CANON the exact form obeys the estimate
    const double kmax = p.gamma * p.D_th * (p.gamma - 1.0) * p.c0 * p.c0 / (p.gamma * p.D_th + p.nu_eff());
    const EnergyMargin m = energy_inequality_check(p, 0.5 * kmax, 0.3, ModeData{0.0, 1.0, 0.0}, ts);
    CHECK(m.first_exact <= 1e-6 * m.scale);
    CHECK(m.second_exact <= 1e-6 * m.scale);
}

TEST_CASE("energy derivative differencing is second order") {
    const PhysicalParams p = canon();
    std::vector<double> a, b;
    for (int i = 0; i < 201; ++i) a.push_back(4.0 * i / 200.0);
    for (int i = 0; i < 401; ++i) b.push_back(4.0 * i / 400.0);
    const ModeData d{0.0, 1.0, 0.0};
    auto fd_error = [&](const std::vector<double>& ts) {
        ModePropagator pv(p, 1.0), pi(p, 1.0, Model::Inviscid);
        double worst = 0.0;
        for (std::size_t i = 1; i + 1 < ts.size(); ++i) {
            auto E = [&](double t) {
                ModeState v = pv.state(d, t), w = pi.state(d, t), u;
                u.phi = v.phi - w.phi;
                u.phi_t = v.phi_t - w.phi_t;
                u.phi_tt = v.phi_tt - w.phi_tt;
                return energy_functionals(p, 0.04, 1.0, u).Ea;
            };
            const double h = 1e-4;
            const double exact = (E(ts[i] + h) - E(ts[i] - h)) / (2.0 * h);
            const double fd = (E(ts[i + 1]) - E(ts[i - 1])) / (ts[i + 1] - ts[i - 1]);
            worst = std::max(worst, std::abs(fd - exact));
        }
        return worst;
    };
    CHECK(fd_error(a) / fd_error(b) == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("sup-norm bounds") {
    PhysicalParams p = canon(2);
    const DataSet d = gaussian_phi1();
    // only rounding survives the cancellation at t = 0
    const double scale = supnorm_diff_bound(p, d, DiffQuantity::U_t, 1.0);
    CHECK(supnorm_diff_bound(p, d, DiffQuantity::TempDiff, 0.0) < 1e-12 * scale);
    CHECK(supnorm_diff_bound(p, d, DiffQuantity::U, 0.0) < 1e-12 * scale);

    p.nu0 = 1e-3;
    const double a = supnorm_diff_bound(p, d, DiffQuantity::U_t, 5.0);
    const double twice = supnorm_diff_bound(p, d.scaled(2.0), DiffQuantity::U_t, 5.0);
    CHECK(twice == doctest::Approx(2.0 * a).epsilon(1e-12));
    p.nu0 = 2.5e-4;
    CHECK(a / supnorm_diff_bound(p, d, DiffQuantity::U_t, 5.0) >= 2.0);

    PhysicalParams p1 = canon(1);
    CHECK_THROWS_AS(supnorm_diff_bound(p1, d, DiffQuantity::U, 1.0), SingularAtOrigin);
    CHECK_NOTHROW(supnorm_diff_bound(p1, d, DiffQuantity::U_t, 1.0));
    CHECK_NOTHROW(supnorm_diff_bound(p1, d, DiffQuantity::U, 1.0, {}, true));

    p = canon(2);
    QuadratureRule r2;
    r2.panels_scale = 2.0;
    for (double t : {0.1, 10.0, 300.0}) {
        const auto x = supnorm_diff_bounds(p, d, t), y = supnorm_diff_bounds(p, d, t, r2);
        for (int q = 0; q < 4; ++q) CHECK(std::abs(x[q] / y[q] - 1.0) < 1e-9);
    }
}

TEST_CASE("limit sweep") {
    const PhysicalParams p = canon(2);
    const std::vector<double> nus{1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
    const LimitSweep s = limit_sweep(p, nus, gaussian_phi1(), logspace(1e-1, 1e2, 6));
    for (int q = 0; q < 4; ++q) CHECK(s.fit[q].slope >= 0.45);
    CHECK(s.sup.size() == nus.size());
}

TEST_CASE("uniform integrability") {
    const PhysicalParams p = canon(2);
    for (UIVariant v : {UIVariant::J0, UIVariant::J1, UIVariant::Weighted, UIVariant::SupT})
        CHECK(uniform_integrability_series(p, zero_data(), v, {10.0})[0] == 0.0);
    CHECK_THROWS_AS(uniform_integrability_series(canon(1), gaussian_phi1(), UIVariant::Weighted, {10.0}), SingularAtOrigin);

    // closed-form inner time integral against dense Simpson quadrature
    const double T = 5.0;
    const DataSet d = gaussian_phi1();
    const double closed = uniform_integrability_series(p, d, UIVariant::J0, {T})[0];
    QuadratureRule rule;
    rule.R = 2.0 * std::sqrt(std::log(1e16));
    const RadialGrid g = radial_grid(p, T, 2, rule);
    std::vector<double> v(g.r.size());
    const int m = 2000;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double r = g.r[i];
        const ModeData md{0.0, std::exp(-r * r / 4.0) * 3.14159265358979323846, 0.0};
        double s = 0.0;
        for (int k = 0; k <= m; ++k) {
            const double tau = T * k / m;
            const ModeState st = mode_solution_inviscid(p, r, md, tau);
            const double f = std::norm(st.phi_tt) + std::norm(r * r * st.phi_t);
            s += (k == 0 || k == m ? 1.0 : (k % 2 ? 4.0 : 2.0)) * f;
        }
        v[i] = std::sqrt(s * T / (3.0 * m));
    }
    const double dense = sphere_area(2) * panel_sum(g, v);
    CHECK(closed == doctest::Approx(dense).epsilon(1e-7));

    const PlateauResult pl = uniform_integrability_plateau(p, d, UIVariant::J0, 1e4);
    CHECK(pl.relative_increase >= 0.0);
    CHECK(pl.relative_increase < 1e-3);
    CHECK_NOTHROW(uniform_integrability_check(p, d, UIVariant::J0, 1e4));
    CHECK_THROWS_AS(uniform_integrability_check(p, d, UIVariant::J0, 1.0), NotPlateaued);
}

TEST_CASE("WKB corrector") {
    const PhysicalParams p = canon();
    const ModeData d{0.2, 1.0, 0.3};
    for (double r : {0.3, 1.5}) {
        CHECK(std::abs(wkb_corrector_hat(p, r, d, 0.0)) < 1e-14);
        const ModePropagator inv(p, r, Model::Inviscid);
        const double k = 1.0 + p.beta;
        auto f = [&](double s) {
            const ModeState w = inv.state(d, s);
            return -k * r * r * w.phi_tt - k * p.gamma * p.D_th * std::pow(r, 4) * w.phi_t;
        };
        const double t = 3.0;
        const auto y = rk4_solve(cubic_coeffs(p, r, Model::Inviscid), {0.0, 0.0, 0.0}, t, 20000, f);
        CHECK(rel(wkb_corrector_hat(p, r, d, t), y[0]) < 1e-7);
    }
    CHECK(wkb_corrector_hat(p, 0.0, d, 2.0) == cplx(0.0));
}
