#pragma once

#include <utility>
#include <vector>

#include "tva/params.hpp"
#include "tva/spectral.hpp"

namespace tva {

enum class MultiplierId { G0, G1, G2, G3, H0 };

double multiplier(MultiplierId id, const PhysicalParams& p, double r, double t);

// Literal auxiliary functions built from the exact roots; conjugate-pair regime only.
cplx j0_hat(const PhysicalParams& p, double r, double t, cplx phi1);
cplx j1_hat(const PhysicalParams& p, double r, double t, cplx phi0, cplx phi1, cplx T0);

enum class ResidualCheck { J0Bound, J1AndPhiMinusJ0Bound, PhiMinusJ0J1Bound, J0MinusG0Bound, J0MinusG0H0Bound, J1MinusG123Bound };

const char* residual_check_name(ResidualCheck w);
// Power of r the stated bound allows: each check's quantity is O(r^power) at fixed r^2 t.
double residual_check_nominal(ResidualCheck w);

struct OrderEstimate {
    double power = 0.0;
    std::vector<std::pair<double, double>> samples;  // (r, envelope)
};

// Envelope (max over t with r^2 t in [tau, 2 tau]) of the check's quantity,
// fitted against r in log-log.
OrderEstimate residual_order_check(ResidualCheck w, const PhysicalParams& p, const std::vector<double>& rs,
                                   double tau = 1.0);

struct SecondProfile {
    cplx psi = 0.0;
    double E6 = 0.0, E7 = 0.0;  // psi = i E6 + E7
};

struct ProfileMoments {
    double P_phi0 = 0.0, P_phi1 = 0.0, P_T0 = 0.0;
};

// xi_dot_M = xi . M_{phi1}
SecondProfile second_profile_hat(const PhysicalParams& p, double r, double xi_dot_M, double t,
                                 const ProfileMoments& m);

// First profile G0(t, r) P_{phi1}
double first_profile_hat(const PhysicalParams& p, double r, double t, double P_phi1);

// |S^{n-1}|/(4 n gamma c0^2) |M|^2 t^{-n/2} (2 Gamma0)^{-n/2} Gamma(n/2)
double e6_norm_asymptote(const PhysicalParams& p, int n, double M_abs, double t);

}  // namespace tva
