#include <doctest.h>

#include <cmath>

#include "tva/errors.hpp"
#include "tva/profiles.hpp"
#include "tva/quad.hpp"

using namespace tva;

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

TEST_CASE("sphere areas") {
    CHECK(sphere_area(1) == 2.0);
    CHECK(sphere_area(2) == doctest::Approx(2.0 * kPi).epsilon(1e-15));
    CHECK(sphere_area(3) == doctest::Approx(4.0 * kPi).epsilon(1e-15));
}

TEST_CASE("Gauss rules integrate polynomials exactly") {
    const GaussRule g = gauss_legendre(8);
    for (int k = 0; k <= 15; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < g.x.size(); ++i) s += g.w[i] * std::pow(g.x[i], k);
        const double ex = k % 2 ? 0.0 : 2.0 / (k + 1);
        CHECK(std::abs(s - ex) < 1e-14);
    }
    for (int n = 1; n <= 4; ++n) {
        const GaussRule s = slice_rule(n, 8);
        double tot = 0.0;
        for (double w : s.w) tot += w;
        CHECK(tot == doctest::Approx(sphere_area(n)).epsilon(1e-13));
    }
}

TEST_CASE("Plancherel on Gaussians") {
    const PhysicalParams p = canon(2);
    for (double t : {0.5, 3.0, 100.0}) {
        const double v = l2_norm_radial([&](double r) { return std::exp(-r * r * t); }, 2, p, t);
        CHECK(v == doctest::Approx(std::sqrt(kPi / (2.0 * t))).epsilon(1e-10));
    }
    const double v3 = l2_norm_radial([&](double r) { return std::exp(-r * r); }, 3, p, 1.0);
    CHECK(v3 * v3 == doctest::Approx(std::pow(kPi / 2.0, 1.5)).epsilon(1e-10));
    CHECK(l2_norm_radial([](double) { return 0.0; }, 2, p, 1.0) == 0.0);

    const PhysicalParams p1 = canon(1);
    CHECK(l1_norm_radial([](double r) { return std::exp(-r * r); }, 1, p1, 1.0) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-12));
    CHECK(l1_norm_radial([](double) { return 0.0; }, 1, p1, 1.0) == 0.0);
    const double a = l1_norm_radial([](double r) { return std::exp(-r * r); }, 2, p, 1.0);
    const double b = l1_norm_radial([](double r) { return 2.0 * std::exp(-r * r); }, 2, p, 1.0);
    CHECK(b == doctest::Approx(2.0 * a).epsilon(1e-15));
}

TEST_CASE("slice norms") {
    const PhysicalParams p = canon(3);
    const double t = 2.0;
    const auto m = [&](double r) { return std::exp(-r * r * t); };
    const double rad = l2_norm_radial(m, 3, p, t);
    const double sl = l2_norm_slice([&](double r, double) { return m(r); }, 3, p, t);
    CHECK(sl == doctest::Approx(rad).epsilon(1e-12));

    // |xi.e1|^2 e^{-2 r^2 t}: the angular factor is |S^{n-1}|/n
    for (int n = 2; n <= 3; ++n) {
        PhysicalParams q = canon(n);
        const double v = l2_norm_slice([&](double r, double u) { return r * u * m(r); }, n, q, t);
        const double radial = l2_norm_radial([&](double r) { return r * m(r); }, n, q, t);
        CHECK(v * v == doctest::Approx(radial * radial / n).epsilon(1e-8));
    }
    const PhysicalParams p1 = canon(1);
    const double v1 = l2_norm_slice([&](double r, double u) { return r * u * m(r); }, 1, p1, t);
    CHECK(v1 == doctest::Approx(l2_norm_radial([&](double r) { return r * m(r); }, 1, p1, t)).epsilon(1e-14));
}

TEST_CASE("kink-aware absolute sums") {
    const PhysicalParams p = canon(1);
    QuadratureRule rule;
    rule.R = 10.0;
    for (double scale : {1.0, 2.0}) {
        rule.panels_scale = scale;
        const RadialGrid g = radial_grid(p, 50.0, 1, rule);
        std::vector<cplx> v(g.r.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::sin(3.0 * g.r[i]) * cplx(0.6, 0.8);
        // \int_0^{10} |sin 3r| dr: 9 full half-periods plus the remainder
        const double h = kPi / 3.0;
        const int full = static_cast<int>(10.0 / h);
        const double ex = full * (2.0 / 3.0) + (1.0 - std::cos(3.0 * (10.0 - full * h))) / 3.0;
        CHECK(panel_sum_abs(g, v) == doctest::Approx(ex).epsilon(1e-13));
    }
}

TEST_CASE("reference rates") {
    CHECK(reference_rate(1, 100.0) == doctest::Approx(10.0));
    CHECK(reference_rate(2, std::exp(4.0)) == doctest::Approx(2.0));
    CHECK(reference_rate(4, 16.0) == doctest::Approx(0.25));
}

TEST_CASE("rate fitting") {
    std::vector<std::pair<double, double>> s;
    for (double t : logspace(1e2, 1e5, 13)) s.emplace_back(t, std::pow(t, -0.75));
    RateFitResult f = fit_rate(s);
    CHECK(f.slope == doctest::Approx(-0.75).epsilon(1e-12));
    CHECK(f.max_residual < 1e-12);
    s.clear();
    for (double t : logspace(1e2, 1e5, 13)) s.emplace_back(t, 3.0 * std::sqrt(t));
    CHECK(fit_rate(s).slope == doctest::Approx(0.5).epsilon(1e-12));
    s.clear();
    for (double t : logspace(1e3, 1e9, 13)) s.emplace_back(t, std::sqrt(std::log(t)));
    f = fit_rate(s);
    CHECK(std::abs(f.slope) < 0.1);
    CHECK(f.logarithmic_suspect);

    s.clear();
    for (double t : logspace(1e2, 1e3, 13)) s.emplace_back(t, t);
    CHECK_THROWS_AS(fit_rate(s), InsufficientWindow);
    s.clear();
    for (double t : logspace(1e2, 1e5, 4)) s.emplace_back(t, t);
    CHECK_THROWS_AS(fit_rate(s), InsufficientWindow);
}

TEST_CASE("truncation radius") {
    const PhysicalParams p = canon(2);
    CHECK(truncation_radius(p, 1e4, 1e-16) == 1.0);
    CHECK(envelope_radius(p, 1e4, 1e-16) == doctest::Approx(std::sqrt(std::log(1e16) / (2.0 * 0.1 * 1e4))));
    CHECK(truncation_radius(p, 1.0, 1e-20) >= truncation_radius(p, 1.0, 1e-16));
    CHECK(envelope_radius(p, 1.0, 1e-16) / envelope_radius(p, 100.0, 1e-16) == doctest::Approx(10.0));
}

TEST_CASE("panels resolve the oscillation") {
    const PhysicalParams p = canon(2);
    for (double t : {10.0, 1e3}) {
        QuadratureRule rule;
        const RadialGrid g = radial_grid(p, t, 2, rule);
        const double quarter = (kPi / 2.0) / (std::sqrt(p.gamma) * p.c0 * t);
        for (std::size_t k = 0; k + 1 < g.edges.size(); ++k) CHECK(g.edges[k + 1] - g.edges[k] <= quarter);
    }
}

TEST_CASE("G0 norms: growth and refinement") {
    const PhysicalParams p = canon(1);
    auto norm = [&](double t, double scale) {
        QuadratureRule rule;
        rule.panels_scale = scale;
        return l2_norm_radial([&](double r) { return multiplier(MultiplierId::G0, p, r, t); }, 1, p, t, rule);
    };
    CHECK(norm(400.0, 1.0) / norm(100.0, 1.0) == doctest::Approx(2.0).epsilon(0.05));
    for (double t : {1e2, 1e4}) CHECK(std::abs(norm(t, 2.0) / norm(t, 1.0) - 1.0) < 1e-9);
}
