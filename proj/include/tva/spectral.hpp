#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <utility>

#include "tva/params.hpp"

namespace tva {

using cplx = std::complex<double>;

// Viscous: the third-order mode equation of the coupled system.
// Inviscid: the same equation with the (1+beta)nu0 terms removed.
enum class Model { Viscous, Inviscid };

inline double model_nu(const PhysicalParams& p, Model m) { return m == Model::Viscous ? p.nu_eff() : 0.0; }

template <class S>
struct CubicT {
    S c2, c1, c0;  // lambda^3 + c2 lambda^2 + c1 lambda + c0
};
using Cubic = CubicT<double>;

enum class RootClass { RealPlusConjugatePair, ThreeReal };

// Roots stored as one distinguished real root lambda1 and a pair
// lambdaR +- sqrt(-s): complex pair lambdaR -+ i lambdaI when s = lambdaI^2 > 0,
// two further real roots when s < 0.
template <class S>
struct CharRootsT {
    RootClass cls = RootClass::RealPlusConjugatePair;
    S lambda1 = 0, lambdaR = 0, lambdaI = 0;
    S s = 0;
    std::array<S, 3> real{0, 0, 0};  // ThreeReal: labeled (lambda1, lambda2, lambda3)
    bool zero = false;               // r = 0, triple root at the origin
    bool degenerate = false;

    // (lambda1, lambda2, lambda3); in the pair case lambda2 = lambdaR - i lambdaI.
    std::array<std::complex<S>, 3> roots() const {
        if (cls == RootClass::ThreeReal)
            return {std::complex<S>(real[0]), std::complex<S>(real[1]), std::complex<S>(real[2])};
        return {std::complex<S>(lambda1), std::complex<S>(lambdaR, -lambdaI), std::complex<S>(lambdaR, lambdaI)};
    }
};
using CharRoots = CharRootsT<double>;

Cubic cubic_coeffs(const PhysicalParams& p, double r, Model m = Model::Viscous);

// Roots of a monic real cubic by Cardano (one real root) or the trigonometric
// form (three real roots) on a scaled variable, each real root Newton-polished
// and the pair recovered from Vieta. In the three-real case lambda1 is the root
// farthest from the other two and lambda2 >= lambda3.
template <class S>
CharRootsT<S> solve_monic_cubic(S c2, S c1, S c0);

// Exact roots of the mode cubic. A near-double root triggers one retry at
// r(1 + 1e-9); DegenerateRoots if that fails too. In the three-real regime the
// pair is labeled by proximity to the large-frequency expansions.
CharRoots solve_char_roots(const PhysicalParams& p, double r, Model m = Model::Viscous);
CharRoots inviscid_roots(const PhysicalParams& p, double r);

CharRoots small_freq_expansion(const PhysicalParams& p, double r);
CharRoots large_freq_expansion(const PhysicalParams& p, double r);
CharRoots inviscid_small_expansion(const PhysicalParams& p, double r);
CharRoots inviscid_large_expansion(const PhysicalParams& p, double r);

struct ModeData {
    cplx phi0 = 0.0, phi1 = 0.0, T0 = 0.0;
};

struct ModeState {
    cplx phi = 0.0, phi_t = 0.0, phi_tt = 0.0;
    cplx T = 0.0;  // temperature from the modal formula
    double t = 0.0, r = 0.0;
};

cplx third_datum(const PhysicalParams& p, double r, const ModeData& d, Model m = Model::Viscous);

// Real fundamental system of the mode equation: y = A e^{l1 t} + e^{lR t}(B C(t) + E S(t))
// with C = cos(lI t), S = sin(lI t)/lI (or cosh/sinh when s < 0).
class ModePropagator {
public:
    ModePropagator(const PhysicalParams& p, double r, Model m = Model::Viscous);
    ModePropagator(const PhysicalParams& p, double r, const CharRoots& roots, Model m);

    const CharRoots& roots() const { return roots_; }
    double r() const { return r_; }

    struct Basis {
        double e1, ec, es;
    };
    Basis basis(double t) const;

    // Derivatives 0..3 at t of the solution with initial triple (y0, y1, y2).
    std::array<cplx, 4> evaluate(cplx y0, cplx y1, cplx y2, double t) const;
    std::array<cplx, 4> evaluate(cplx y0, cplx y1, cplx y2, const Basis& b, double t) const;

    // Applies the rational multiplier -(lambda + nu r^2 + c0^2 r^2 / lambda)/(alpha c0^2)
    // mode by mode; this is the temperature of the state without cancellation.
    cplx temperature(cplx y0, cplx y1, cplx y2, const Basis& b, cplx T0_origin) const;

    ModeState state(const ModeData& d, double t) const;

private:
    PhysicalParams p_;
    Model model_;
    double r_;
    CharRoots roots_;
    double den_;
};

ModeState mode_solution(const PhysicalParams& p, double r, const ModeData& d, double t);
ModeState mode_solution_inviscid(const PhysicalParams& p, double r, const ModeData& d, double t);

// Four-term conjugate-pair representation, evaluated literally.
cplx mode_solution_pair_form(const PhysicalParams& p, double r, const ModeData& d, double t, Model m = Model::Viscous);

// sum_j c_j e^{lambda_j t} with complex Lagrange coefficients; requires distinct roots.
std::array<cplx, 3> mode_solution_lagrange(const PhysicalParams& p, double r, const ModeData& d, double t,
                                           Model m = Model::Viscous);

// (phi_tt + gamma c0^2 r^2 phi + nu r^2 phi_t) / (alpha_p c0^2 gamma D_th r^2); T0 at r = 0.
cplx temperature_hat(const PhysicalParams& p, double r, const ModeState& s, cplx T0_origin = 0.0,
                     Model m = Model::Viscous);

using Vec3c = std::array<cplx, 3>;

Vec3c energy_vector_hat(const PhysicalParams& p, double r, const ModeState& s, cplx T);

// Classical RK4 on the companion system, with an optional source f(t) on the
// right of the third-order equation.
ModeState rk4_oracle(const PhysicalParams& p, double r, const ModeData& d, double t, int steps,
                     Model m = Model::Viscous);
std::array<cplx, 3> rk4_solve(const Cubic& c, std::array<cplx, 3> y, double t, int steps,
                              const std::function<cplx(double)>& source = nullptr);

// Complex modal coefficients of the solution with initial triple y (distinct roots).
std::array<cplx, 3> modal_coefficients(const std::array<cplx, 3>& lam, cplx y0, cplx y1, cplx y2);

// Response (derivatives 0..3) at time t of L y = sum_j d_j e^{z_j t}, y(0)=y'(0)=y''(0)=0,
// where L has characteristic roots lam. Resonant terms are handled in the limit.
std::array<cplx, 4> duhamel_exp_sum(const std::array<cplx, 3>& lam, const std::array<cplx, 3>& z,
                                    const std::array<cplx, 3>& d, double t);

}  // namespace tva
