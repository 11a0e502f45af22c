#pragma once

#include <optional>
#include <string>

namespace tva {

// Dimensionless physical parameters. The primitive quantities (rho0, kappaT,
// cP, cV) are optional; when present they determine c0 and gamma.
struct PhysicalParams {
    double c0 = 1.0;
    double gamma = 1.4;
    double beta = 1.0;
    double nu0 = 0.1;
    double alpha_p = 1.0;
    double D_th = 0.1;
    int n = 2;

    std::optional<double> rho0, kappaT, cP, cV;

    double nu_eff() const { return (1.0 + beta) * nu0; }
};

struct DerivedConstants {
    double Gamma0;
    double Gamma1;
};

PhysicalParams canon(int n = 2);

// Fills c0 / gamma from the primitive quantities when those are given.
PhysicalParams resolve(const PhysicalParams& p);

void validate(const PhysicalParams& p);

// |(1+beta)nu0 - gamma D_th| < 1e-6: allowed, but Q1 has large entries.
bool near_degenerate(const PhysicalParams& p);

DerivedConstants derive_constants(const PhysicalParams& p);

}  // namespace tva
