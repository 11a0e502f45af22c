#include "tva/params.hpp"

#include <cmath>

#include "tva/errors.hpp"

namespace tva {

namespace {

bool rel_close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

void require_positive(double v, const char* name) {
    if (!(v > 0.0)) throw NonPositiveQuantity(name);
}

}  // namespace

PhysicalParams canon(int n) {
    PhysicalParams p;
    p.n = n;
    return p;
}

PhysicalParams resolve(const PhysicalParams& in) {
    PhysicalParams p = in;
    if (p.rho0) require_positive(*p.rho0, "rho0");
    if (p.kappaT) require_positive(*p.kappaT, "kappaT");
    if (p.cP) require_positive(*p.cP, "cP");
    if (p.cV) require_positive(*p.cV, "cV");
    if (p.rho0 && p.kappaT) {
        double c = 1.0 / std::sqrt(*p.rho0 * *p.kappaT);
        if (std::isnan(p.c0)) {
            p.c0 = c;
        } else if (!rel_close(p.c0, c, 1e-12)) {
            throw InvalidParameter("c0 inconsistent with 1/sqrt(rho0*kappaT)");
        }
    }
    if (p.cP && p.cV) {
        double g = *p.cP / *p.cV;
        if (std::isnan(p.gamma)) {
            p.gamma = g;
        } else if (!rel_close(p.gamma, g, 1e-12)) {
            throw InvalidParameter("gamma inconsistent with cP/cV");
        }
    }
    return p;
}

void validate(const PhysicalParams& in) {
    PhysicalParams p = resolve(in);
    require_positive(p.c0, "c0");
    require_positive(p.nu0, "nu0");
    require_positive(p.alpha_p, "alpha_p");
    require_positive(p.D_th, "D_th");
    if (p.n < 1) throw NonPositiveQuantity("n");
    if (!(p.gamma > 1.0)) throw GammaNotGreaterThanOne();
    if (!(p.beta > 1.0 / 3.0)) throw InvalidParameter("beta must exceed 1/3");
    double a = p.nu_eff(), b = p.gamma * p.D_th;
    if (std::abs(a - b) <= 1e-12 * std::max(a, b)) throw DegenerateDiffusion();
}

bool near_degenerate(const PhysicalParams& p) {
    return std::abs(p.nu_eff() - p.gamma * p.D_th) < 1e-6;
}

DerivedConstants derive_constants(const PhysicalParams& p) {
    double nu = p.nu_eff();
    double G0 = (nu + (p.gamma - 1.0) * p.D_th) / 2.0;
    double G1 = (-G0 * G0 - 2.0 * p.D_th * G0 + nu * p.gamma * p.D_th) /
                (2.0 * std::sqrt(p.gamma) * p.c0);
    return {G0, G1};
}

}  // namespace tva
