#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "tva/params.hpp"
#include "tva/spectral.hpp"

namespace tva {

template <class S>
using Mat3 = Eigen::Matrix<std::complex<S>, 3, 3>;
template <class S>
using Vec3 = Eigen::Matrix<std::complex<S>, 3, 1>;
using Mat3c = Mat3<double>;
using Vec3cd = Vec3<double>;

template <class S>
struct SystemMatricesT {
    Mat3<S> A1, A2;
};
using SystemMatrices = SystemMatricesT<double>;

// Phi_t + (A1 r + A2 r^2) Phi = 0 for the energy vector Phi.
template <class S>
SystemMatricesT<S> system_matrices(const PhysicalParams& p) {
    using C = std::complex<S>;
    const S g = p.gamma, c0 = p.c0, a = p.alpha_p, D = p.D_th, nu = p.nu_eff();
    const S sg = std::sqrt(g);
    const C i(0, 1);
    SystemMatricesT<S> m;
    const C k = i * (g - S(1)) / (S(2) * a * sg * c0);
    m.A1 << -i * sg * c0, C(0), C(0),
            C(0), i * sg * c0, C(0),
            k, -k, C(0);
    const S kT = a * c0 * c0 * g * D;
    m.A2 << nu / S(2), nu / S(2), -kT,
            nu / S(2), nu / S(2), -kT,
            S(0), S(0), g * D;
    return m;
}

Mat3c system_symbol(const PhysicalParams& p, double r);

struct IdentityResidual {
    std::string name;
    double residual;
};

template <class S>
struct SmallFreqTransformsT {
    Mat3<S> U1, N2, Lambda1s, A2s, Lambda2s;
};
using SmallFreqTransforms = SmallFreqTransformsT<double>;

template <class S>
SmallFreqTransformsT<S> small_freq_matrices(const PhysicalParams& p) {
    using C = std::complex<S>;
    const S g = p.gamma, c0 = p.c0, a = p.alpha_p, D = p.D_th, nu = p.nu_eff();
    const S sg = std::sqrt(g), G0 = (nu + (g - S(1)) * D) / S(2);
    const C i(0, 1), is = i * sg * c0;
    const S k = S(2) * g * a * c0 * c0 / (g - S(1));
    SmallFreqTransformsT<S> m;
    m.U1 << S(0), S(0), -k,
            S(0), -k, S(0),
            S(1), S(1), S(1);
    m.Lambda1s = Mat3<S>::Zero();
    m.Lambda1s.diagonal() << C(0), is, -is;
    m.A2s << D, D - nu, D - nu,
             (g - S(1)) * D / S(2), G0, G0,
             (g - S(1)) * D / S(2), G0, G0;
    m.N2 << C(0), (D - nu) / is, -(D - nu) / is,
            -(g - S(1)) * D / (S(2) * is), C(0), -(nu + (g - S(1)) * D) / (S(4) * is),
            (g - S(1)) * D / (S(2) * is), (nu + (g - S(1)) * D) / (S(4) * is), C(0);
    m.Lambda2s = Mat3<S>::Zero();
    m.Lambda2s.diagonal() << D, G0, G0;
    return m;
}

template <class S>
struct LargeFreqTransformsT {
    Mat3<S> Q1, A1l, V2, A1l2, V3, Lambda1l, Lambda3l;
};
using LargeFreqTransforms = LargeFreqTransformsT<double>;

template <class S>
LargeFreqTransformsT<S> large_freq_matrices(const PhysicalParams& p) {
    using C = std::complex<S>;
    const S g = p.gamma, c0 = p.c0, a = p.alpha_p, D = p.D_th, nu = p.nu_eff();
    const S sg = std::sqrt(g), c2 = c0 * c0, dn = nu - g * D;
    const C i(0, 1);
    const S q = a * c2 * g * D / dn;
    LargeFreqTransformsT<S> m;
    m.Q1 << S(-1), q, S(1),
            S(1), q, S(1),
            S(0), S(1), S(0);
    m.Lambda1l = Mat3<S>::Zero();
    m.Lambda1l.diagonal() << S(0), g * D, nu;
    const S f = S(1) + (g - S(1)) * D / dn;
    m.A1l << C(0), i * g * sg * c2 * c0 * a * D / dn, i * sg * c0,
             -i * (g - S(1)) / (a * sg * c0), C(0), C(0),
             i * sg * c0 * f, C(0), C(0);
    m.V2 << C(0), i * sg * c2 * c0 * a / dn, i * sg * c0 / nu,
            i * (g - S(1)) / (a * g * sg * c0 * D), C(0), C(0),
            -(i * sg * c0 / nu) * f, C(0), C(0);
    m.A1l2 << c2 / nu, S(0), S(0),
              S(0), (g - S(1)) * c2 / dn, (g - S(1)) / (a * nu),
              S(0), -g * c2 * c2 * a * (nu - D) / (dn * dn), -g * c2 * (nu - D) / (dn * nu);
    m.V3 << S(0), S(0), S(0),
            S(0), S(0), (g - S(1)) / (a * nu * dn),
            S(0), g * c2 * c2 * a * (nu - D) / (dn * dn * dn), S(0);
    m.Lambda3l = Mat3<S>::Zero();
    m.Lambda3l.diagonal() << c2 / nu, (g - S(1)) * c2 / dn, -g * c2 * (nu - D) / (dn * nu);
    return m;
}

// Each returns the matrices after checking every stated identity to tol
// (relative to the size of the matrices involved); IdentityViolated otherwise.
SmallFreqTransforms small_freq_transforms(const PhysicalParams& p, std::vector<IdentityResidual>* residuals = nullptr,
                                          double tol = 1e-12);
LargeFreqTransforms large_freq_transforms(const PhysicalParams& p, std::vector<IdentityResidual>* residuals = nullptr,
                                          double tol = 1e-12);

// Phi^(0) <-> mode data
Vec3cd energy_data(const PhysicalParams& p, double r, const ModeData& d);
ModeData mode_data_from_energy(const PhysicalParams& p, double r, const Vec3cd& Phi0);

// exp(-(A1 r + A2 r^2) t) Phi0 through the eigen-decomposition.
Vec3cd exact_energy_evolution(const PhysicalParams& p, double r, const Vec3cd& Phi0, double t);

// U_int diag(e^{lambda_j t}) U_int^{-1} Phi0, U_int = U1 (I + r N2).
Vec3cd interior_representation(const PhysicalParams& p, double r, const Vec3cd& Phi0, double t);

// U1 diag(e^{mu_j t}) U1^{-1} Phi0, mu = (-D r^2, -i sqrt(gamma) c0 r - Gamma0 r^2, i sqrt(gamma) c0 r - Gamma0 r^2).
Vec3cd reference_profile_hat(const PhysicalParams& p, double r, const Vec3cd& Phi0, double t);

struct ZonePartition {
    double eps0 = 0.0, N0 = 0.0;
};

// Cutoffs where the small / large frequency expansions reach 5% worst relative root error.
ZonePartition zone_cutoffs(const PhysicalParams& p, double rel_err = 0.05);

struct ScanResult {
    double max_re = 0.0;  // spectral abscissa of -(A1 r + A2 r^2) over the grid
    double argmax_r = 0.0;
    double c = 0.0;       // -max_re
    int points = 0;
};

// Throws StabilityViolated if any sampled abscissa is >= 0.
ScanResult bounded_zone_scan(const PhysicalParams& p, const ZonePartition& zone, int grid);

struct BoundFit {
    double C = 0.0, c = 0.0;
    int violations = 0;
    int points = 0;
};

// |Phi^(t, xi)| <= C e^{-c r^2 t/(1+r^2)} |Phi^_0| certified with the operator
// norm of the propagator on the (r, t) grid: largest c on a log grid in
// (0, 2 Gamma0] with C(c) < C_max, C(c) the max ratio.
BoundFit pointwise_bound_fit(const PhysicalParams& p, const std::vector<double>& rs, const std::vector<double>& ts,
                             double C_max = 1e3);

double propagator_norm(const PhysicalParams& p, double r, double t);

}  // namespace tva
