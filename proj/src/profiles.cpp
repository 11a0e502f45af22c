#include "tva/profiles.hpp"

#include <algorithm>
#include <cmath>

#include "tva/errors.hpp"
#include "tva/quad.hpp"

namespace tva {

double multiplier(MultiplierId id, const PhysicalParams& p, double r, double t) {
    const double G0 = derive_constants(p).Gamma0, w = std::sqrt(p.gamma) * p.c0;
    const double x = w * r * t, damp = std::exp(-G0 * r * r * t);
    switch (id) {
        case MultiplierId::G0: {
            double sinc = std::abs(x) < 1e-4 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
            return t * sinc * damp;
        }
        case MultiplierId::H0:
            return derive_constants(p).Gamma1 / w * std::cos(x) * r * r * t * damp;
        case MultiplierId::G1:
            return std::cos(x) * damp;
        case MultiplierId::G2:
            return (p.gamma - 1.0) * p.D_th / (p.gamma * p.c0 * p.c0) *
                   (std::exp(-p.D_th * r * r * t) - std::cos(x) * damp);
        case MultiplierId::G3:
            return p.alpha_p * p.D_th * (std::exp(-p.D_th * r * r * t) - std::cos(x) * damp);
    }
    return 0.0;
}

namespace {

struct PairRoots {
    double l1, lR, lI, den;
};

PairRoots pair_roots(const PhysicalParams& p, double r) {
    CharRoots q = solve_char_roots(p, r);
    if (q.zero || q.cls != RootClass::RealPlusConjugatePair) throw DegenerateRoots(r);
    return {q.lambda1, q.lambdaR, q.lambdaI,
            2.0 * q.lambdaR * q.lambda1 - q.lambdaI * q.lambdaI - q.lambdaR * q.lambdaR - q.lambda1 * q.lambda1};
}

}  // namespace

cplx j0_hat(const PhysicalParams& p, double r, double t, cplx phi1) {
    PairRoots q = pair_roots(p, r);
    return -q.lI * phi1 / q.den * std::sin(q.lI * t) * std::exp(q.lR * t);
}

cplx j1_hat(const PhysicalParams& p, double r, double t, cplx phi0, cplx phi1, cplx T0) {
    PairRoots q = pair_roots(p, r);
    const double r2 = r * r, gc = p.gamma * p.c0 * p.c0 * r2;
    const double e1 = std::exp(q.l1 * t), ec = std::cos(q.lI * t) * std::exp(q.lR * t);
    const double kT = p.alpha_p * p.c0 * p.c0 * p.gamma * p.D_th * r2;
    return ((gc - q.lI * q.lI) * e1 - gc * ec) / q.den * phi0 + (2.0 * q.lR + p.nu_eff() * r2) * phi1 / q.den * (e1 - ec) -
           kT * T0 / q.den * (e1 - ec);
}

const char* residual_check_name(ResidualCheck w) {
    switch (w) {
        case ResidualCheck::J0Bound: return "j0_bound";
        case ResidualCheck::J1AndPhiMinusJ0Bound: return "j1_and_phi_minus_j0_bound";
        case ResidualCheck::PhiMinusJ0J1Bound: return "phi_minus_j0_j1_bound";
        case ResidualCheck::J0MinusG0Bound: return "j0_minus_g0_bound";
        case ResidualCheck::J0MinusG0H0Bound: return "j0_minus_g0_h0_bound";
        case ResidualCheck::J1MinusG123Bound: return "j1_minus_g123_bound";
    }
    return "";
}

double residual_check_nominal(ResidualCheck w) {
    switch (w) {
        case ResidualCheck::J0Bound: return -1.0;
        case ResidualCheck::J1AndPhiMinusJ0Bound: return 0.0;
        case ResidualCheck::PhiMinusJ0J1Bound: return 1.0;
        case ResidualCheck::J0MinusG0Bound: return 0.0;
        case ResidualCheck::J0MinusG0H0Bound: return 1.0;
        case ResidualCheck::J1MinusG123Bound: return 1.0;
    }
    return 0.0;
}

namespace {

double check_quantity(ResidualCheck w, const PhysicalParams& p, double r, double t) {
    const ModeData d{1.0, 1.0, 1.0};
    const double sum = 3.0;
    switch (w) {
        case ResidualCheck::J0Bound:
            return std::abs(j0_hat(p, r, t, 1.0));
        case ResidualCheck::J1AndPhiMinusJ0Bound: {
            cplx phi = mode_solution(p, r, d, t).phi;
            return (std::abs(j1_hat(p, r, t, 1.0, 1.0, 1.0)) + std::abs(phi - j0_hat(p, r, t, 1.0))) / sum;
        }
        case ResidualCheck::PhiMinusJ0J1Bound: {
            cplx phi = mode_solution(p, r, d, t).phi;
            return std::abs(phi - j0_hat(p, r, t, 1.0) - j1_hat(p, r, t, 1.0, 1.0, 1.0)) / sum;
        }
        case ResidualCheck::J0MinusG0Bound:
            return std::abs(j0_hat(p, r, t, 1.0) - multiplier(MultiplierId::G0, p, r, t));
        case ResidualCheck::J0MinusG0H0Bound:
            return std::abs(j0_hat(p, r, t, 1.0) - multiplier(MultiplierId::G0, p, r, t) -
                            multiplier(MultiplierId::H0, p, r, t));
        case ResidualCheck::J1MinusG123Bound: {
            double g = multiplier(MultiplierId::G1, p, r, t) + multiplier(MultiplierId::G2, p, r, t) +
                       multiplier(MultiplierId::G3, p, r, t);
            return std::abs(j1_hat(p, r, t, 1.0, 1.0, 1.0) - g) / sum;
        }
    }
    return 0.0;
}

}  // namespace

OrderEstimate residual_order_check(ResidualCheck w, const PhysicalParams& p, const std::vector<double>& rs,
                                   double tau) {
    OrderEstimate est;
    for (double r : rs) {
        double env = 0.0;
        for (int k = 0; k <= 200; ++k) {
            double t = tau * (1.0 + k / 200.0) / (r * r);
            env = std::max(env, check_quantity(w, p, r, t));
        }
        est.samples.emplace_back(r, env);
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(est.samples.size());
    for (const auto& [r, v] : est.samples) {
        double x = std::log(r), y = std::log(v);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    est.power = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    return est;
}

SecondProfile second_profile_hat(const PhysicalParams& p, double r, double xi_dot_M, double t,
                                 const ProfileMoments& m) {
    SecondProfile s;
    s.E6 = -xi_dot_M * multiplier(MultiplierId::G0, p, r, t);
    s.E7 = multiplier(MultiplierId::G1, p, r, t) * m.P_phi0 +
           (multiplier(MultiplierId::H0, p, r, t) + multiplier(MultiplierId::G2, p, r, t)) * m.P_phi1 +
           multiplier(MultiplierId::G3, p, r, t) * m.P_T0;
    s.psi = cplx(s.E7, s.E6);
    return s;
}

double first_profile_hat(const PhysicalParams& p, double r, double t, double P_phi1) {
    return multiplier(MultiplierId::G0, p, r, t) * P_phi1;
}

double e6_norm_asymptote(const PhysicalParams& p, int n, double M_abs, double t) {
    const double G0 = derive_constants(p).Gamma0;
    return sphere_area(n) / (4.0 * n * p.gamma * p.c0 * p.c0) * M_abs * M_abs * std::pow(t, -0.5 * n) *
           std::pow(2.0 * G0, -0.5 * n) * std::tgamma(0.5 * n);
}

}  // namespace tva
