#include "tva/spectral.hpp"

#include <algorithm>

#include "tva/errors.hpp"

namespace tva {

namespace {

template <class S>
S newton_polish(S z, S a, S b, S c) {
    for (int it = 0; it < 8; ++it) {
        S f = ((z + a) * z + b) * z + c;
        S df = (S(3) * z + S(2) * a) * z + b;
        if (df == S(0)) break;
        S dz = f / df;
        z -= dz;
        if (std::abs(dz) <= std::numeric_limits<S>::epsilon() * std::abs(z)) break;
    }
    return z;
}

// (e^{a t} - e^{b t}) / (a - b), finite as a -> b
cplx exp_divided_difference(cplx a, cplx b, double t) {
    cplx h = (a - b) * t;
    if (std::abs(h) > 1e-2) return (std::exp(a * t) - std::exp(b * t)) / (a - b);
    // e^{b t} t (e^h - 1)/h
    cplx term = 1.0, sum = 1.0;
    for (int k = 1; k < 14; ++k) {
        term *= h / double(k + 1);
        sum += term;
    }
    return std::exp(b * t) * t * sum;
}

}  // namespace

Cubic cubic_coeffs(const PhysicalParams& p, double r, Model m) {
    const double nu = model_nu(p, m), r2 = r * r, gD = p.gamma * p.D_th;
    return {(gD + nu) * r2, p.gamma * p.c0 * p.c0 * r2 + nu * gD * r2 * r2, gD * p.c0 * p.c0 * r2 * r2};
}

template <class S>
CharRootsT<S> solve_monic_cubic(S c2, S c1, S c0) {
    using std::abs;
    CharRootsT<S> out;
    const S sigma = std::max({abs(c2), std::sqrt(abs(c1)), std::cbrt(abs(c0))});
    if (sigma == S(0)) {
        out.zero = true;
        return out;
    }
    const S a = c2 / sigma, b = c1 / (sigma * sigma), c = c0 / (sigma * sigma * sigma);
    const S shift = a / S(3);
    const S pp = b - a * a / S(3);
    const S qq = S(2) * a * a * a / S(27) - a * b / S(3) + c;
    const S disc = qq * qq / S(4) + pp * pp * pp / S(27);

    std::array<S, 3> z{};
    if (disc > S(0)) {
        S sq = std::sqrt(disc);
        S A = -std::cbrt(qq / S(2) + std::copysign(sq, qq));
        S B = A != S(0) ? -pp / (S(3) * A) : S(0);
        z[0] = newton_polish(A + B - shift, a, b, c);
        S sum = -a - z[0];
        S prod = z[0] != S(0) ? -c / z[0] : b - z[0] * sum;
        S s = prod - sum * sum / S(4);
        if (s > S(0)) {
            out.cls = RootClass::RealPlusConjugatePair;
            out.lambda1 = z[0] * sigma;
            out.lambdaR = sum / S(2) * sigma;
            out.s = s * sigma * sigma;
            out.lambdaI = std::sqrt(out.s);
            out.degenerate = std::sqrt(s) < S(1e-12) * std::max(S(1), abs(z[0]));
            return out;
        }
        // rounding put us on the real side of a double root
        S mu = std::sqrt(-s);
        z[1] = sum / S(2) + mu;
        z[2] = sum / S(2) - mu;
    } else {
        const S pi = std::acos(S(-1));
        S m = S(2) * std::sqrt(-pp / S(3));
        S arg = m != S(0) ? S(3) * qq / (pp * m) : S(0);
        arg = std::clamp(arg, S(-1), S(1));
        S th = std::acos(arg) / S(3);
        for (int k = 0; k < 3; ++k) z[k] = newton_polish(m * std::cos(th - S(2) * pi * S(k) / S(3)) - shift, a, b, c);
    }
    // isolated root = largest min-distance to the others
    int iso = 0;
    S best = -1;
    for (int i = 0; i < 3; ++i) {
        S d = std::min(abs(z[i] - z[(i + 1) % 3]), abs(z[i] - z[(i + 2) % 3]));
        if (d > best) {
            best = d;
            iso = i;
        }
    }
    S zi = z[iso], zj = z[(iso + 1) % 3], zk = z[(iso + 2) % 3];
    if (zj < zk) std::swap(zj, zk);
    out.cls = RootClass::ThreeReal;
    out.lambda1 = zi * sigma;
    out.lambdaR = (zj + zk) / S(2) * sigma;
    S half = (zj - zk) / S(2);
    out.s = -half * half * sigma * sigma;
    out.lambdaI = 0;
    out.real = {zi * sigma, zj * sigma, zk * sigma};
    S scale = std::max({S(1), abs(zi), abs(zj), abs(zk)});
    out.degenerate = (zj - zk) < S(1e-12) * scale || std::min(abs(zi - zj), abs(zi - zk)) < S(1e-12) * scale;
    return out;
}

template CharRootsT<double> solve_monic_cubic<double>(double, double, double);
template CharRootsT<long double> solve_monic_cubic<long double>(long double, long double, long double);

namespace {

CharRoots roots_at(const PhysicalParams& p, double r, Model m) {
    Cubic c = cubic_coeffs(p, r, m);
    return solve_monic_cubic(c.c2, c.c1, c.c0);
}

void label_three_real(const PhysicalParams& p, double r, CharRoots& cr) {
    if (cr.cls != RootClass::ThreeReal) return;
    CharRoots ex = large_freq_expansion(p, r);
    std::array<double, 3> v = cr.real;
    // try every assignment of the three reals to the expansion labels
    std::array<int, 3> perm{0, 1, 2}, best = perm;
    double best_err = std::numeric_limits<double>::infinity();
    do {
        double e = 0.0;
        for (int k = 0; k < 3; ++k) e += std::abs(v[perm[k]] - ex.real[k]);
        if (e < best_err) {
            best_err = e;
            best = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    cr.real = {v[best[0]], v[best[1]], v[best[2]]};
    cr.lambda1 = cr.real[0];
    cr.lambdaR = 0.5 * (cr.real[1] + cr.real[2]);
    double half = 0.5 * (cr.real[1] - cr.real[2]);
    cr.s = -half * half;
}

}  // namespace

CharRoots solve_char_roots(const PhysicalParams& p, double r, Model m) {
    if (r == 0.0) {
        CharRoots z;
        z.zero = true;
        return z;
    }
    CharRoots cr = roots_at(p, r, m);
    if (cr.degenerate) {
        cr = roots_at(p, r * (1.0 + 1e-9), m);
        if (cr.degenerate) throw DegenerateRoots(r);
    }
    if (m == Model::Viscous) label_three_real(p, r, cr);
    return cr;
}

CharRoots inviscid_roots(const PhysicalParams& p, double r) { return solve_char_roots(p, r, Model::Inviscid); }

CharRoots small_freq_expansion(const PhysicalParams& p, double r) {
    DerivedConstants g = derive_constants(p);
    const double D = p.D_th, nu = p.nu_eff(), r2 = r * r;
    CharRoots cr;
    cr.zero = r == 0.0;
    cr.lambda1 = -D * r2 + D * D * (p.gamma - 1.0) * (nu - D) / (p.gamma * p.c0 * p.c0) * r2 * r2;
    cr.lambdaR = -g.Gamma0 * r2;
    cr.lambdaI = std::sqrt(p.gamma) * p.c0 * r + g.Gamma1 * r2 * r;
    cr.s = cr.lambdaI * cr.lambdaI;
    return cr;
}

CharRoots large_freq_expansion(const PhysicalParams& p, double r) {
    const double D = p.D_th, nu = p.nu_eff(), g = p.gamma, c2 = p.c0 * p.c0, r2 = r * r;
    CharRoots cr;
    cr.cls = RootClass::ThreeReal;
    cr.real = {-c2 / nu, -g * D * r2 - (g - 1.0) * c2 / (nu - g * D), -nu * r2 + g * c2 * (nu - D) / ((nu - g * D) * nu)};
    cr.lambda1 = cr.real[0];
    cr.lambdaR = 0.5 * (cr.real[1] + cr.real[2]);
    double half = 0.5 * (cr.real[1] - cr.real[2]);
    cr.s = -half * half;
    return cr;
}

CharRoots inviscid_small_expansion(const PhysicalParams& p, double r) {
    CharRoots cr;
    cr.zero = r == 0.0;
    cr.lambda1 = -p.D_th * r * r;
    cr.lambdaR = -(p.gamma - 1.0) * p.D_th * r * r / 2.0;
    cr.lambdaI = std::sqrt(p.gamma) * p.c0 * r;
    cr.s = cr.lambdaI * cr.lambdaI;
    return cr;
}

CharRoots inviscid_large_expansion(const PhysicalParams& p, double r) {
    CharRoots cr;
    cr.lambda1 = -p.gamma * p.D_th * r * r;
    cr.lambdaR = -(p.gamma - 1.0) * p.c0 * p.c0 / (2.0 * p.gamma * p.D_th);
    cr.lambdaI = p.c0 * r;
    cr.s = cr.lambdaI * cr.lambdaI;
    return cr;
}

cplx third_datum(const PhysicalParams& p, double r, const ModeData& d, Model m) {
    const double r2 = r * r, c2 = p.c0 * p.c0;
    return -p.gamma * c2 * r2 * d.phi0 - model_nu(p, m) * r2 * d.phi1 +
           p.alpha_p * c2 * p.gamma * p.D_th * r2 * d.T0;
}

ModePropagator::ModePropagator(const PhysicalParams& p, double r, Model m)
    : ModePropagator(p, r, solve_char_roots(p, r, m), m) {}

ModePropagator::ModePropagator(const PhysicalParams& p, double r, const CharRoots& roots, Model m)
    : p_(p), model_(m), r_(r), roots_(roots) {
    const double d = roots_.lambda1 - roots_.lambdaR;
    den_ = d * d + roots_.s;
}

ModePropagator::Basis ModePropagator::basis(double t) const {
    const auto& q = roots_;
    Basis b;
    if (q.zero) return {1.0, 1.0, t};
    b.e1 = std::exp(q.lambda1 * t);
    if (q.s > 0.0) {
        double er = std::exp(q.lambdaR * t), w = q.lambdaI * t;
        b.ec = er * std::cos(w);
        b.es = er * std::sin(w) / q.lambdaI;
    } else if (q.s < 0.0) {
        double mu = std::sqrt(-q.s);
        double hi = std::exp((q.lambdaR + mu) * t), lo = std::exp((q.lambdaR - mu) * t);
        b.ec = 0.5 * (hi + lo);
        b.es = -hi * std::expm1(-2.0 * mu * t) / (2.0 * mu);
    } else {
        double er = std::exp(q.lambdaR * t);
        b.ec = er;
        b.es = er * t;
    }
    return b;
}

std::array<cplx, 4> ModePropagator::evaluate(cplx y0, cplx y1, cplx y2, double t) const {
    return evaluate(y0, y1, y2, basis(t), t);
}

std::array<cplx, 4> ModePropagator::evaluate(cplx y0, cplx y1, cplx y2, const Basis& b, double t) const {
    const auto& q = roots_;
    if (q.zero) return {y0 + y1 * t + 0.5 * y2 * t * t, y1 + y2 * t, y2, 0.0};
    const double l1 = q.lambda1, lR = q.lambdaR, s = q.s;
    cplx A = (y2 - 2.0 * lR * y1 + (lR * lR + s) * y0) / den_;
    cplx B = y0 - A;
    cplx E = y1 - l1 * A - lR * B;
    std::array<cplx, 4> out;
    for (int k = 0; k < 4; ++k) {
        out[k] = A * b.e1 + B * b.ec + E * b.es;
        A *= l1;
        cplx Bn = lR * B + E;
        E = lR * E - s * B;
        B = Bn;
    }
    return out;
}

cplx ModePropagator::temperature(cplx y0, cplx y1, cplx y2, const Basis& b, cplx T0_origin) const {
    const auto& q = roots_;
    if (q.zero) return T0_origin;
    const double l1 = q.lambda1, lR = q.lambdaR, s = q.s;
    const double nu = model_nu(p_, model_), r2 = r_ * r_, c2 = p_.c0 * p_.c0;
    cplx A = (y2 - 2.0 * lR * y1 + (lR * lR + s) * y0) / den_;
    cplx B = y0 - A;
    cplx E = y1 - l1 * A - lR * B;
    const double mod2 = lR * lR + s;
    cplx Bm = (lR * B - E) / mod2, Em = (s * B + lR * E) / mod2;  // pair part divided by lambda
    cplx Bp = lR * B + E, Ep = lR * E - s * B;                    // pair part times lambda
    cplx a1 = A * (l1 + nu * r2 + c2 * r2 / l1);
    cplx bb = Bp + nu * r2 * B + c2 * r2 * Bm;
    cplx ee = Ep + nu * r2 * E + c2 * r2 * Em;
    return -(a1 * b.e1 + bb * b.ec + ee * b.es) / (p_.alpha_p * c2);
}

ModeState ModePropagator::state(const ModeData& d, double t) const {
    cplx y2 = third_datum(p_, r_, d, model_);
    Basis b = basis(t);
    auto v = evaluate(d.phi0, d.phi1, y2, b, t);
    ModeState st;
    st.phi = v[0];
    st.phi_t = v[1];
    st.phi_tt = v[2];
    st.T = temperature(d.phi0, d.phi1, y2, b, d.T0);
    st.t = t;
    st.r = r_;
    return st;
}

ModeState mode_solution(const PhysicalParams& p, double r, const ModeData& d, double t) {
    return ModePropagator(p, r, Model::Viscous).state(d, t);
}

ModeState mode_solution_inviscid(const PhysicalParams& p, double r, const ModeData& d, double t) {
    return ModePropagator(p, r, Model::Inviscid).state(d, t);
}

cplx mode_solution_pair_form(const PhysicalParams& p, double r, const ModeData& d, double t, Model m) {
    CharRoots q = solve_char_roots(p, r, m);
    if (q.cls != RootClass::RealPlusConjugatePair || q.zero) throw DegenerateRoots(r);
    const double l1 = q.lambda1, lR = q.lambdaR, lI = q.lambdaI;
    const double den = 2.0 * lR * l1 - lI * lI - lR * lR - l1 * l1;
    const double r2 = r * r, gc2 = p.gamma * p.c0 * p.c0 * r2, nur2 = model_nu(p, m) * r2;
    const double kT = p.alpha_p * p.c0 * p.c0 * p.gamma * p.D_th * r2;
    const double e1 = std::exp(l1 * t), er = std::exp(lR * t), co = std::cos(lI * t), si = std::sin(lI * t);
    cplx t1 = ((gc2 - lI * lI - lR * lR) * d.phi0 + (2.0 * lR + nur2) * d.phi1 - kT * d.T0) / den * e1;
    cplx t2 = ((2.0 * lR * l1 - l1 * l1 - gc2) * d.phi0 - (2.0 * lR + nur2) * d.phi1 + kT * d.T0) / den * co * er;
    cplx t3 = (l1 * (lR * l1 + lI * lI - lR * lR) + gc2 * (lR - l1)) * d.phi0 / (lI * den) * si * er;
    cplx t4 = ((lR * lR - lI * lI - l1 * l1 + (lR - l1) * nur2) * d.phi1 - (lR - l1) * kT * d.T0) / (lI * den) * si * er;
    return t1 + t2 + t3 + t4;
}

std::array<cplx, 3> modal_coefficients(const std::array<cplx, 3>& lam, cplx y0, cplx y1, cplx y2) {
    std::array<cplx, 3> c;
    for (int j = 0; j < 3; ++j) {
        cplx lk = lam[(j + 1) % 3], ll = lam[(j + 2) % 3];
        c[j] = (y2 - (lk + ll) * y1 + lk * ll * y0) / ((lam[j] - lk) * (lam[j] - ll));
    }
    return c;
}

std::array<cplx, 3> mode_solution_lagrange(const PhysicalParams& p, double r, const ModeData& d, double t, Model m) {
    CharRoots q = solve_char_roots(p, r, m);
    auto lam = q.roots();
    auto c = modal_coefficients(lam, d.phi0, d.phi1, third_datum(p, r, d, m));
    std::array<cplx, 3> out{0.0, 0.0, 0.0};
    for (int j = 0; j < 3; ++j) {
        cplx e = c[j] * std::exp(lam[j] * t);
        out[0] += e;
        out[1] += lam[j] * e;
        out[2] += lam[j] * lam[j] * e;
    }
    return out;
}

cplx temperature_hat(const PhysicalParams& p, double r, const ModeState& s, cplx T0_origin, Model m) {
    if (r == 0.0) return T0_origin;
    const double r2 = r * r, c2 = p.c0 * p.c0;
    return (s.phi_tt + p.gamma * c2 * r2 * s.phi + model_nu(p, m) * r2 * s.phi_t) /
           (p.alpha_p * c2 * p.gamma * p.D_th * r2);
}

Vec3c energy_vector_hat(const PhysicalParams& p, double r, const ModeState& s, cplx T) {
    const cplx w(0.0, std::sqrt(p.gamma) * p.c0 * r);
    return {s.phi_t + w * s.phi, s.phi_t - w * s.phi, T};
}

std::array<cplx, 3> rk4_solve(const Cubic& c, std::array<cplx, 3> y, double t, int steps,
                              const std::function<cplx(double)>& source) {
    auto f = [&](double tau, const std::array<cplx, 3>& v) {
        cplx rhs = -c.c0 * v[0] - c.c1 * v[1] - c.c2 * v[2];
        if (source) rhs += source(tau);
        return std::array<cplx, 3>{v[1], v[2], rhs};
    };
    const double h = t / steps;
    for (int i = 0; i < steps; ++i) {
        const double tau = i * h;
        auto axpy = [](const std::array<cplx, 3>& a, double s, const std::array<cplx, 3>& b) {
            return std::array<cplx, 3>{a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]};
        };
        auto k1 = f(tau, y);
        auto k2 = f(tau + h / 2, axpy(y, h / 2, k1));
        auto k3 = f(tau + h / 2, axpy(y, h / 2, k2));
        auto k4 = f(tau + h, axpy(y, h, k3));
        for (int k = 0; k < 3; ++k) y[k] += h / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
    }
    return y;
}

ModeState rk4_oracle(const PhysicalParams& p, double r, const ModeData& d, double t, int steps, Model m) {
    auto y = rk4_solve(cubic_coeffs(p, r, m), {d.phi0, d.phi1, third_datum(p, r, d, m)}, t, steps);
    ModeState s;
    s.phi = y[0];
    s.phi_t = y[1];
    s.phi_tt = y[2];
    s.T = temperature_hat(p, r, s, d.T0, m);
    s.t = t;
    s.r = r;
    return s;
}

std::array<cplx, 4> duhamel_exp_sum(const std::array<cplx, 3>& lam, const std::array<cplx, 3>& z,
                                    const std::array<cplx, 3>& d, double t) {
    // y^{(m)}(t) = sum_k lam_k^m / P'(lam_k) * sum_j d_j (e^{z_j t} - e^{lam_k t})/(z_j - lam_k),
    // plus the source itself in the third derivative.
    std::array<cplx, 4> out{0.0, 0.0, 0.0, 0.0};
    for (int k = 0; k < 3; ++k) {
        cplx dp = (lam[k] - lam[(k + 1) % 3]) * (lam[k] - lam[(k + 2) % 3]);
        cplx conv = 0.0;
        for (int j = 0; j < 3; ++j) conv += d[j] * exp_divided_difference(z[j], lam[k], t);
        cplx w = conv / dp;
        for (int m = 0; m < 4; ++m) {
            out[m] += w;
            w *= lam[k];
        }
    }
    for (int j = 0; j < 3; ++j) out[3] += d[j] * std::exp(z[j] * t);
    return out;
}

}  // namespace tva
