#include "tva/diagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "tva/errors.hpp"
#include "tva/quad.hpp"

namespace tva {

namespace {

double rel_residual(const Mat3c& got, const Mat3c& want) {
    double scale = std::max({1.0, got.cwiseAbs().maxCoeff(), want.cwiseAbs().maxCoeff()});
    return (got - want).cwiseAbs().maxCoeff() / scale;
}

Mat3c commutator(const Mat3c& a, const Mat3c& b) { return a * b - b * a; }

void record(std::vector<IdentityResidual>* out, const std::string& name, double res, double tol) {
    if (out) out->push_back({name, res});
    if (!(res <= tol)) throw IdentityViolated(name, res);
}

}  // namespace

Mat3c system_symbol(const PhysicalParams& p, double r) {
    auto m = system_matrices<double>(p);
    return m.A1 * r + m.A2 * (r * r);
}

SmallFreqTransforms small_freq_transforms(const PhysicalParams& p, std::vector<IdentityResidual>* residuals,
                                          double tol) {
    auto s = small_freq_matrices<double>(p);
    auto A = system_matrices<double>(p);
    Mat3c Ui = s.U1.inverse();
    record(residuals, "U1^-1 A1 U1 = Lambda1s", rel_residual(Ui * A.A1 * s.U1, s.Lambda1s), tol);
    record(residuals, "U1^-1 A2 U1 = A2(1,s)", rel_residual(Ui * A.A2 * s.U1, s.A2s), tol);
    record(residuals, "A2(1,s) - [N2, Lambda1s] = diag(D, Gamma0, Gamma0)",
           rel_residual(s.A2s - commutator(s.N2, s.Lambda1s), s.Lambda2s), tol);
    return s;
}

LargeFreqTransforms large_freq_transforms(const PhysicalParams& p, std::vector<IdentityResidual>* residuals,
                                          double tol) {
    auto l = large_freq_matrices<double>(p);
    auto A = system_matrices<double>(p);
    Mat3c Qi = l.Q1.inverse();
    record(residuals, "Q1^-1 A2 Q1 = Lambda1l", rel_residual(Qi * A.A2 * l.Q1, l.Lambda1l), tol);
    record(residuals, "Q1^-1 A1 Q1 = A1(1,l)", rel_residual(Qi * A.A1 * l.Q1, l.A1l), tol);
    record(residuals, "A1(1,l) - [V2, Lambda1l] = 0",
           rel_residual(l.A1l - commutator(l.V2, l.Lambda1l), Mat3c::Zero()), tol);
    record(residuals, "A1(1,l) V2 = A1(2,l)", rel_residual(l.A1l * l.V2, l.A1l2), tol);
    record(residuals, "A1(2,l) - [V3, Lambda1l] = Lambda3l",
           rel_residual(l.A1l2 - commutator(l.V3, l.Lambda1l), l.Lambda3l), tol);
    return l;
}

Vec3cd energy_data(const PhysicalParams& p, double r, const ModeData& d) {
    const cplx w(0.0, std::sqrt(p.gamma) * p.c0 * r);
    return Vec3cd(d.phi1 + w * d.phi0, d.phi1 - w * d.phi0, d.T0);
}

ModeData mode_data_from_energy(const PhysicalParams& p, double r, const Vec3cd& Phi0) {
    ModeData d;
    d.phi1 = 0.5 * (Phi0(0) + Phi0(1));
    d.phi0 = r > 0.0 ? (Phi0(0) - Phi0(1)) / (2.0 * cplx(0.0, std::sqrt(p.gamma) * p.c0 * r)) : 0.0;
    d.T0 = Phi0(2);
    return d;
}

Vec3cd exact_energy_evolution(const PhysicalParams& p, double r, const Vec3cd& Phi0, double t) {
    if (r == 0.0) return Phi0;
    Mat3c M = -system_symbol(p, r);
    Eigen::ComplexEigenSolver<Mat3c> es(M);
    const auto& ev = es.eigenvalues();
    double scale = ev.cwiseAbs().maxCoeff(), sep = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) sep = std::min(sep, std::abs(ev(i) - ev(j)));
    if (sep < 1e-12 * scale) throw DegenerateRoots(r);
    Vec3cd c = es.eigenvectors().partialPivLu().solve(Phi0);
    for (int j = 0; j < 3; ++j) c(j) *= std::exp(ev(j) * t);
    return es.eigenvectors() * c;
}

namespace {

Vec3cd diag_propagate(const Mat3c& U, const std::array<cplx, 3>& mu, const Vec3cd& Phi0, double t) {
    Vec3cd c = U.partialPivLu().solve(Phi0);
    for (int j = 0; j < 3; ++j) c(j) *= std::exp(mu[j] * t);
    return U * c;
}

}  // namespace

Vec3cd interior_representation(const PhysicalParams& p, double r, const Vec3cd& Phi0, double t) {
    auto s = small_freq_matrices<double>(p);
    Mat3c U = s.U1 * (Mat3c::Identity() + r * s.N2);
    CharRoots q = solve_char_roots(p, r);
    return diag_propagate(U, q.roots(), Phi0, t);
}

Vec3cd reference_profile_hat(const PhysicalParams& p, double r, const Vec3cd& Phi0, double t) {
    auto s = small_freq_matrices<double>(p);
    const double G0 = derive_constants(p).Gamma0, w = std::sqrt(p.gamma) * p.c0 * r;
    std::array<cplx, 3> mu{cplx(-p.D_th * r * r), cplx(-G0 * r * r, -w), cplx(-G0 * r * r, w)};
    return diag_propagate(s.U1, mu, Phi0, t);
}

namespace {

double worst_rel_error(const std::array<cplx, 3>& exact, const std::array<cplx, 3>& approx) {
    double e = 0.0;
    for (int j = 0; j < 3; ++j) e = std::max(e, std::abs(exact[j] - approx[j]) / std::abs(exact[j]));
    return e;
}

}  // namespace

ZonePartition zone_cutoffs(const PhysicalParams& p, double rel_err) {
    const auto rs = logspace(1e-3, 1e4, 3501);
    ZonePartition z;
    z.eps0 = rs.front();
    for (double r : rs) {
        if (worst_rel_error(solve_char_roots(p, r).roots(), small_freq_expansion(p, r).roots()) >= rel_err) break;
        z.eps0 = r;
    }
    z.N0 = rs.back();
    for (auto it = rs.rbegin(); it != rs.rend(); ++it) {
        if (worst_rel_error(solve_char_roots(p, *it).roots(), large_freq_expansion(p, *it).roots()) >= rel_err) break;
        z.N0 = *it;
    }
    return z;
}

ScanResult bounded_zone_scan(const PhysicalParams& p, const ZonePartition& zone, int grid) {
    if (grid < 2) throw InvalidParameter("bounded zone scan needs at least 2 points");
    ScanResult res;
    res.max_re = -std::numeric_limits<double>::infinity();
    for (double r : logspace(zone.eps0, zone.N0, grid)) {
        Eigen::ComplexEigenSolver<Mat3c> es(-system_symbol(p, r), false);
        double a = es.eigenvalues().real().maxCoeff();
        if (a >= 0.0) throw StabilityViolated(r);
        if (a > res.max_re) {
            res.max_re = a;
            res.argmax_r = r;
        }
    }
    res.c = -res.max_re;
    res.points = grid;
    return res;
}

double propagator_norm(const PhysicalParams& p, double r, double t) {
    if (r == 0.0 || t == 0.0) return 1.0;
    Mat3c E = (-system_symbol(p, r) * t).exp();
    return Eigen::JacobiSVD<Mat3c>(E).singularValues()(0);
}

BoundFit pointwise_bound_fit(const PhysicalParams& p, const std::vector<double>& rs, const std::vector<double>& ts,
                             double C_max) {
    std::vector<double> logratio, expo;
    for (double r : rs)
        for (double t : ts) {
            double nrm = propagator_norm(p, r, t);
            logratio.push_back(nrm > 0.0 ? std::log(nrm) : -std::numeric_limits<double>::infinity());
            expo.push_back(r * r * t / (1.0 + r * r));
        }
    auto logC = [&](double c) {
        double m = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < expo.size(); ++i) m = std::max(m, logratio[i] + c * expo[i]);
        return m;
    };
    const double cmax = 2.0 * derive_constants(p).Gamma0;
    BoundFit fit;
    fit.points = static_cast<int>(expo.size());
    fit.c = 0.0;
    fit.C = std::exp(logC(0.0));
    for (double c : logspace(cmax * 1e-6, cmax, 600)) {
        double C = std::exp(logC(c));
        if (C < C_max) {
            fit.c = c;
            fit.C = C;
        }
    }
    for (std::size_t i = 0; i < expo.size(); ++i)
        if (logratio[i] > std::log(fit.C) - fit.c * expo[i] + 1e-12) ++fit.violations;
    return fit;
}

}  // namespace tva
