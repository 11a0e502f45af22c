#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "tva/diagonal.hpp"
#include "tva/errors.hpp"
#include "tva/quad.hpp"
#include "tva/spectral.hpp"

using namespace tva;

namespace {

double cubic_at(const Cubic& c, double x) { return ((x + c.c2) * x + c.c1) * x + c.c0; }

// Real root by bisection on a sign-changing bracket.
double bisect(const Cubic& c, double lo, double hi) {
    double flo = cubic_at(c, lo);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi), fm = cubic_at(c, mid);
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_CASE("cubic coefficients") {
    const PhysicalParams p = canon();
    Cubic c = cubic_coeffs(p, 0.0);
    CHECK(c.c2 == 0.0);
    CHECK(c.c1 == 0.0);
    CHECK(c.c0 == 0.0);
    c = cubic_coeffs(p, 1.0);
    CHECK(c.c2 == doctest::Approx(0.34).epsilon(1e-14));
    CHECK(c.c1 == doctest::Approx(1.428).epsilon(1e-14));
    CHECK(c.c0 == doctest::Approx(0.14).epsilon(1e-14));
    CHECK(cubic_coeffs(p, 2.0).c0 == doctest::Approx(2.24).epsilon(1e-14));
    c = cubic_coeffs(p, 1.0, Model::Inviscid);
    CHECK(c.c2 == doctest::Approx(0.14));
    CHECK(c.c1 == doctest::Approx(1.4));
}

TEST_CASE("roots: residual, Vieta and classification over a log grid") {
    const PhysicalParams p = canon();
    CHECK(solve_char_roots(p, 0.0).zero);
    for (double r : logspace(1e-4, 1e4, 81)) {
        const Cubic c = cubic_coeffs(p, r);
        const CharRoots cr = solve_char_roots(p, r);
        const auto z = cr.roots();
        const double scale = std::max({1.0, std::abs(c.c2), std::abs(c.c1), std::abs(c.c0)});
        for (const cplx& l : z) {
            const cplx res = ((l + c.c2) * l + c.c1) * l + c.c0;
            const double lm = std::max(1.0, std::abs(l));
            CHECK(std::abs(res) / (scale * lm * lm * lm) <= 1e-10);
            CHECK(l.real() < 0.0);
        }
        const cplx sum = z[0] + z[1] + z[2];
        CHECK(std::abs(sum + c.c2) <= 1e-10 * std::max(1.0, c.c2));
        if (cr.cls == RootClass::RealPlusConjugatePair) CHECK(cr.lambdaI > 0.0);
    }
}

TEST_CASE("real root agrees with bisection") {
    const PhysicalParams p = canon();
    for (double r : {1e-2, 0.3, 1.0, 7.0, 100.0}) {
        const Cubic c = cubic_coeffs(p, r);
        const CharRoots cr = solve_char_roots(p, r);
        if (cr.cls != RootClass::RealPlusConjugatePair) continue;
        const double lo = -c.c2 - 2.0 - 2.0 * std::sqrt(c.c1) - c.c0;
        CHECK(cr.lambda1 == doctest::Approx(bisect(c, lo, 0.0)).epsilon(1e-12));
    }
    const CharRoots small = solve_char_roots(p, 1e-2);
    CHECK(small.lambda1 == doctest::Approx(-1e-5).epsilon(1e-3));
}

TEST_CASE("small frequency expansion orders") {
    const PhysicalParams p = canon();
    const DerivedConstants g = derive_constants(p);
    const double r = 1e-2;
    const CharRoots e = solve_char_roots(p, r);
    CHECK(std::abs(e.lambdaR + g.Gamma0 * r * r) <= 10.0 * std::pow(r, 4));
    const CharRoots s = small_freq_expansion(p, r);
    CHECK(std::abs(e.lambdaI - s.lambdaI) <= 10.0 * std::pow(r, 4));

    const CharRoots s01 = small_freq_expansion(p, 0.1);
    const double l1 = -0.1 * 1e-2 + 0.01 * 0.4 * 0.1 / 1.4 * 1e-4;
    CHECK(s01.lambda1 == doctest::Approx(l1).epsilon(1e-13));

    // the truncated lambda1 residual drops at least 32-fold per halving of r
    auto err = [&](double rr) { return std::abs(solve_char_roots(p, rr).lambda1 - small_freq_expansion(p, rr).lambda1); };
    CHECK(err(0.2) / err(0.1) >= 32.0 * 0.9);
    CHECK(small_freq_expansion(p, 0.0).lambda1 == 0.0);

    // Gamma1 recovery at r = 1e-3
    const double r3 = 1e-3;
    const CharRoots e3 = solve_char_roots(p, r3);
    const double rec = (-e3.lambdaI + std::sqrt(p.gamma) * p.c0 * r3) / (-r3 * r3 * r3);
    CHECK(std::abs(rec / g.Gamma1 - 1.0) <= 5e-3);
}

TEST_CASE("large frequency expansion") {
    const PhysicalParams p = canon();
    const CharRoots l = large_freq_expansion(p, 3.0);
    const auto z = l.roots();
    CHECK(l.cls == RootClass::ThreeReal);
    CHECK(z[0].real() == doctest::Approx(-5.0));
    CHECK(z[1].real() == doctest::Approx(-0.14 * 9.0 - 0.4 / 0.06));
    CHECK(z[2].real() == doctest::Approx(-0.2 * 9.0 + 0.14 / 0.012));
    for (double r : {100.0, 1000.0}) {
        const auto ex = solve_char_roots(p, r).roots(), ap = large_freq_expansion(p, r).roots();
        for (int j = 0; j < 3; ++j) CHECK(std::abs(ex[j] - ap[j]) <= 50.0 / r);
    }
}

TEST_CASE("inviscid roots") {
    const PhysicalParams p = canon();
    CHECK(inviscid_roots(p, 0.0).zero);
    const double r = 1e-2;
    const CharRoots z = inviscid_roots(p, r);
    CHECK(z.lambdaR == doctest::Approx(-0.5 * 0.4 * 0.1 * r * r).epsilon(1e-2));
    const CharRoots big = inviscid_roots(p, 1e3);
    CHECK(big.lambdaR == doctest::Approx(-0.4 / (2.0 * 1.4 * 0.1)).epsilon(1e-4));
    const CharRoots ex = inviscid_large_expansion(p, 1e3);
    CHECK(ex.lambdaR == doctest::Approx(-10.0 / 7.0));
}

TEST_CASE("mode solution initial values and the origin") {
    const PhysicalParams p = canon();
    const ModeData d{cplx(0.3, 0.1), cplx(1.0, -0.2), cplx(0.5, 0.0)};
    for (double r : {0.05, 0.5, 5.0}) {
        const ModeState s = mode_solution(p, r, d, 0.0);
        CHECK(rel(s.phi, d.phi0) < 1e-12);
        CHECK(rel(s.phi_t, d.phi1) < 1e-12);
        CHECK(rel(s.phi_tt, third_datum(p, r, d)) < 1e-11);
        CHECK(rel(s.T, d.T0) < 1e-10);
        CHECK(rel(temperature_hat(p, r, s), d.T0) < 1e-10);
    }
    for (double t : {0.0, 1.0, 30.0}) {
        const ModeState s = mode_solution(p, 0.0, d, t);
        CHECK(rel(s.phi, d.phi0 + t * d.phi1) < 1e-14);
        CHECK(rel(mode_solution_inviscid(p, 0.0, d, t).phi, d.phi0 + t * d.phi1) < 1e-14);
        CHECK(rel(temperature_hat(p, 0.0, s, d.T0), d.T0) == 0.0);
    }
}

TEST_CASE("closed form against RK4, viscous and inviscid") {
    const PhysicalParams p = canon();
    const ModeData d{0.0, 1.0, 0.0};
    for (double r : {0.05, 0.5, 5.0}) {
        const ModeState a = mode_solution(p, r, d, 1.0), b = rk4_oracle(p, r, d, 1.0, 10000);
        CHECK(rel(a.phi, b.phi) < 1e-8);
        CHECK(rel(a.phi_t, b.phi_t) < 1e-8);
        const ModeState ai = mode_solution_inviscid(p, r, d, 1.0);
        const ModeState bi = rk4_oracle(p, r, d, 1.0, 10000, Model::Inviscid);
        CHECK(rel(ai.phi, bi.phi) < 1e-8);
    }
}

TEST_CASE("RK4 converges at fourth order") {
    const PhysicalParams p = canon();
    const ModeData d{0.2, 1.0, 0.3};
    const cplx ex = mode_solution(p, 2.0, d, 1.0).phi;
    const double e1 = std::abs(rk4_oracle(p, 2.0, d, 1.0, 40).phi - ex);
    const double e2 = std::abs(rk4_oracle(p, 2.0, d, 1.0, 80).phi - ex);
    CHECK(e1 / e2 == doctest::Approx(16.0).epsilon(0.15));
    CHECK(rel(rk4_oracle(p, 2.0, d, 0.0, 3).phi, d.phi0) == 0.0);
}

TEST_CASE("mode solution satisfies the mode equation") {
    const PhysicalParams p = canon();
    const ModeData d{0.4, -1.0, 0.7};
    for (double r : {0.01, 0.3, 2.0, 40.0}) {
        const Cubic c = cubic_coeffs(p, r);
        const ModePropagator prop(p, r);
        for (double t : {0.1, 1.0, 10.0}) {
            const auto y = prop.evaluate(d.phi0, d.phi1, third_datum(p, r, d), t);
            const cplx res = y[3] + c.c2 * y[2] + c.c1 * y[1] + c.c0 * y[0];
            const double scale = std::abs(y[3]) + c.c2 * std::abs(y[2]) + c.c1 * std::abs(y[1]) + c.c0 * std::abs(y[0]);
            CHECK(std::abs(res) <= 1e-9 * scale);
        }
    }
}

TEST_CASE("alternative representations agree") {
    const PhysicalParams p = canon();
    const ModeData d{0.1, 1.0, -0.4};
    for (double r : {0.05, 0.5}) {
        for (double t : {0.5, 3.0}) {
            const cplx a = mode_solution(p, r, d, t).phi;
            CHECK(rel(mode_solution_pair_form(p, r, d, t), a) < 1e-9);
            CHECK(rel(mode_solution_lagrange(p, r, d, t)[0], a) < 1e-9);
        }
    }
}

TEST_CASE("temperature against the first-order system") {
    const PhysicalParams p = canon();
    const ModeData d{0.2, 1.0, 0.5};
    const double r = 0.3, t = 2.0;
    const ModeState s = mode_solution(p, r, d, t);
    const Vec3cd Phi = exact_energy_evolution(p, r, energy_data(p, r, d), t);
    CHECK(rel(s.T, Phi(2)) < 1e-7);
    CHECK(rel(temperature_hat(p, r, s), Phi(2)) < 1e-7);
}

TEST_CASE("energy vector identities") {
    const PhysicalParams p = canon();
    ModeState s;
    s.phi_t = cplx(0.3, 0.2);
    Vec3c e = energy_vector_hat(p, 0.7, s, 0.0);
    CHECK(e[0] == s.phi_t);
    CHECK(e[1] == s.phi_t);
    s.phi = cplx(-1.1, 0.4);
    e = energy_vector_hat(p, 0.7, s, 0.0);
    CHECK(std::abs(e[0] + e[1] - 2.0 * s.phi_t) < 1e-15);
}

TEST_CASE("real data gives real modes") {
    const PhysicalParams p = canon();
    const ModeData d{0.5, 1.0, 0.2};
    for (double r : {0.01, 1.0, 30.0}) {
        const ModeState s = mode_solution(p, r, d, 4.0);
        CHECK(std::abs(s.phi.imag()) <= 1e-12 * std::abs(s.phi));
    }
}

TEST_CASE("Duhamel sum against RK4 with source") {
    const PhysicalParams p = canon();
    const double r = 0.7, t = 3.0;
    const Cubic c = cubic_coeffs(p, r, Model::Inviscid);
    const auto lam = inviscid_roots(p, r).roots();
    const std::array<cplx, 3> z{cplx(-0.3, 0.0), cplx(-0.1, 0.9), cplx(-0.1, -0.9)};
    const std::array<cplx, 3> dd{cplx(1.0, 0.0), cplx(0.2, 0.5), cplx(0.2, -0.5)};
    auto src = [&](double s) {
        cplx f = 0.0;
        for (int j = 0; j < 3; ++j) f += dd[j] * std::exp(z[j] * s);
        return f;
    };
    const auto rk = rk4_solve(c, {0.0, 0.0, 0.0}, t, 20000, src);
    const auto dh = duhamel_exp_sum(lam, z, dd, t);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(rk[k] - dh[k]) <= 1e-9 * std::max(1.0, std::abs(dh[k])));

    // resonant forcing at a characteristic root
    const std::array<cplx, 3> zr{lam[1], cplx(-0.5), cplx(-0.7)};
    auto srcr = [&](double s) {
        cplx f = 0.0;
        for (int j = 0; j < 3; ++j) f += dd[j] * std::exp(zr[j] * s);
        return f;
    };
    const auto rkr = rk4_solve(c, {0.0, 0.0, 0.0}, t, 20000, srcr);
    const auto dhr = duhamel_exp_sum(lam, zr, dd, t);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(rkr[k] - dhr[k]) <= 1e-8 * std::max(1.0, std::abs(dhr[k])));
}

TEST_CASE("near-double roots are retried, not rejected") {
    PhysicalParams p = canon();
    // scan across the three-real window and its boundaries
    for (double r : logspace(1.0, 20.0, 200)) CHECK_NOTHROW(mode_solution(p, r, {0.0, 1.0, 0.0}, 1.0));
}
