#pragma once

#include <array>
#include <string>
#include <vector>

#include "tva/datagen.hpp"
#include "tva/params.hpp"
#include "tva/quad.hpp"
#include "tva/spectral.hpp"

namespace tva {

// u = phi - phi^(0), componentwise. T holds T - T^(0).
ModeState difference_mode(const PhysicalParams& p, double r, const ModeData& d, double t);

// -(1+beta)nu0 r^2 phi_tt^(0) - (1+beta)nu0 gamma D_th r^4 phi_t^(0)
cplx source_term(const PhysicalParams& p, double r, const ModeState& inviscid);

struct EnergyParams {
    double k1 = 0.0, k2 = 0.0, k3 = 0.0, k4 = 0.0, k5 = 0.0, k6 = 0.0, k7 = 0.0;
};

inline double default_k1(const PhysicalParams& p) { return 0.5 * (p.gamma - 1.0) * p.c0 * p.c0; }

// k4 is the coefficient of |u_t|^2 left after completing the square with k2, k3.
EnergyParams energy_params(const PhysicalParams& p, double r, double k1);

struct EnergyFunctionals {
    double E1 = 0.0, E2 = 0.0, E3 = 0.0, E4 = 0.0, E5 = 0.0;
    // The quadratic forms the two estimates are derived from, before the
    // coefficient lower bounds are applied.
    double Ea = 0.0, Eb = 0.0;
};

EnergyFunctionals energy_functionals(const PhysicalParams& p, double k1, double r, const ModeState& u);

// (2 gamma D c0^2 + k1 nu') / (4 nu' gamma D c0^2 r^2) |f|^2
double energy_rhs(const PhysicalParams& p, double k1, double r, cplx f);

struct EnergyMargin {
    double first = 0.0, second = 0.0;              // E1+E2+E3, E1+E4+E5
    double first_exact = 0.0, second_exact = 0.0;  // Ea, Eb
    double scale = 0.0;                            // max over the grid of the energy sums
    double worst() const;                          // max of the two displayed sums
};

// max over interior points of (1/2) dE/dt - RHS with dE/dt by central differences
// along the exact difference trajectory.
EnergyMargin energy_inequality_check(const PhysicalParams& p, double k1, double r, const ModeData& d,
                                     const std::vector<double>& ts);

enum class DiffQuantity { U_t, LapU, U, TempDiff };

const char* diff_quantity_name(DiffQuantity q);

double data_width(const DataSet& data);

// L1 phase-space norm of the difference quantity: an upper bound for its sup-norm in x.
double supnorm_diff_bound(const PhysicalParams& p, const DataSet& data, DiffQuantity q, double t,
                          const QuadratureRule& rule = {}, bool allow_n1 = false);
std::array<double, 4> supnorm_diff_bounds(const PhysicalParams& p, const DataSet& data, double t,
                                          const QuadratureRule& rule = {}, bool allow_n1 = false);

struct LimitSweep {
    std::vector<double> nus, ts;
    std::vector<std::array<double, 4>> sup;  // per nu0
    std::array<RateFitResult, 4> fit;
};

LimitSweep limit_sweep(const PhysicalParams& base, const std::vector<double>& nus, const DataSet& data,
                       const std::vector<double>& ts, const QuadratureRule& rule = {}, bool allow_n1 = false);

enum class UIVariant { J0, J1, J2, Weighted, SupT };

const char* ui_variant_name(UIVariant v);

// Value of the integral at each horizon T.
std::vector<double> uniform_integrability_series(const PhysicalParams& p, const DataSet& data, UIVariant v,
                                                 const std::vector<double>& Ts, const QuadratureRule& rule = {});

struct PlateauResult {
    double value = 0.0, half_value = 0.0, relative_increase = 0.0;
};

PlateauResult uniform_integrability_plateau(const PhysicalParams& p, const DataSet& data, UIVariant v, double T_max,
                                            const QuadratureRule& rule = {});

// Value at T_max; NotPlateaued if the increase from T_max/2 is 1e-3 or more.
double uniform_integrability_check(const PhysicalParams& p, const DataSet& data, UIVariant v, double T_max,
                                   const QuadratureRule& rule = {});

// First-order inviscid corrector per mode: zero data, source from phi^(0).
cplx wkb_corrector_hat(const PhysicalParams& p, double r, const ModeData& d, double t);

struct WkbResult {
    std::vector<double> nus;
    std::vector<double> with_corrector, without_corrector, first_order;
    RateFitResult fit_with, fit_without, fit_first_order;
};

// Norms of phi - phi^(0) - sqrt(nu0) phi^{I,1}, of phi - phi^(0), and of the
// remainder after the full first-order term in nu0 (source and third datum).
WkbResult wkb_corrector_error(const PhysicalParams& base, const std::vector<double>& nus, const DataSet& data,
                              double t, const QuadratureRule& rule = {});

}  // namespace tva
