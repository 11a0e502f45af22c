#include "tva/datagen.hpp"

#include <cmath>

#include "tva/errors.hpp"
#include "tva/quad.hpp"

namespace tva {

namespace {

constexpr double kPi = 3.14159265358979323846;

double gauss_mass(double a, int n) { return std::pow(kPi * a * a, 0.5 * n); }

double gauss_hat(double a, double r2, int n) { return gauss_mass(a, n) * std::exp(-0.25 * a * a * r2); }

// \int |x| e^{-|x|^2/a^2} dx
double gauss_first_abs_moment(double a, int n) {
    return sphere_area(n) * std::pow(a, n + 1) * std::tgamma(0.5 * (n + 1)) / 2.0;
}

Eigen::VectorXd direction_of(const DataSpec& s, int n) {
    if (s.kind == DataKind::OddGaussian) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
        e(s.axis) = 1.0;
        return e;
    }
    return s.shift.normalized();
}

bool is_anisotropic(const DataSpec& s) {
    return s.kind == DataKind::OddGaussian ||
           (s.kind == DataKind::ShiftedGaussian && s.shift.size() > 0 && s.shift.norm() > 0.0);
}

}  // namespace

cplx fourier_transform(const DataSpec& s, const Eigen::VectorXd& xi) {
    const int n = static_cast<int>(xi.size());
    const double g = s.amplitude * gauss_hat(s.width, xi.squaredNorm(), n);
    switch (s.kind) {
        case DataKind::Gaussian:
            return g;
        case DataKind::ShiftedGaussian: {
            double ph = s.shift.size() ? xi.dot(s.shift) : 0.0;
            return std::polar(g, -ph);
        }
        case DataKind::OddGaussian:
            return cplx(0.0, -0.5 * s.width * s.width * xi(s.axis) * g);
    }
    return 0.0;
}

Moments moments(const DataSpec& s, int n) {
    Moments m;
    m.M = Eigen::VectorXd::Zero(n);
    const double mass = s.amplitude * gauss_mass(s.width, n);
    switch (s.kind) {
        case DataKind::Gaussian:
            m.P = mass;
            break;
        case DataKind::ShiftedGaussian:
            m.P = mass;
            if (s.shift.size()) m.M = mass * s.shift;
            break;
        case DataKind::OddGaussian:
            m.M(s.axis) = mass * 0.5 * s.width * s.width;
            break;
    }
    return m;
}

double l11_norm(const DataSpec& s, int n) {
    const double a = s.width, A = std::abs(s.amplitude);
    switch (s.kind) {
        case DataKind::Gaussian:
            return A * (gauss_mass(a, n) + gauss_first_abs_moment(a, n));
        case DataKind::ShiftedGaussian: {
            double x0 = s.shift.size() ? s.shift.norm() : 0.0;
            return A * ((1.0 + x0) * gauss_mass(a, n) + gauss_first_abs_moment(a, n));
        }
        case DataKind::OddGaussian: {
            double l1 = a * a * std::pow(std::sqrt(kPi) * a, n - 1);
            double sphere_abs = 2.0 * std::pow(kPi, 0.5 * (n - 1)) / std::tgamma(0.5 * (n + 1));
            double w = sphere_abs * std::pow(a, n + 2) * std::tgamma(0.5 * (n + 2)) / 2.0;
            return A * (l1 + w);
        }
    }
    return 0.0;
}

bool DataSet::empty(DataRole role) const {
    for (const auto& s : items)
        if (s.role == role) return false;
    return true;
}

Moments DataSet::moments(DataRole role, int n) const {
    Moments out;
    out.M = Eigen::VectorXd::Zero(n);
    for (const auto& s : items) {
        if (s.role != role) continue;
        Moments m = tva::moments(s, n);
        out.P += m.P;
        out.M += m.M;
    }
    return out;
}

std::optional<Eigen::VectorXd> DataSet::slice_axis(int n) const {
    std::optional<Eigen::VectorXd> axis;
    for (const auto& s : items) {
        if (!is_anisotropic(s)) continue;
        if (s.kind == DataKind::ShiftedGaussian && s.shift.size() != n)
            throw ConfigError("shift vector length differs from dimension");
        if (s.kind == DataKind::OddGaussian && (s.axis < 0 || s.axis >= n))
            throw ConfigError("odd_gaussian axis out of range");
        Eigen::VectorXd e = direction_of(s, n);
        if (!axis) {
            axis = e;
        } else if (std::abs(std::abs(axis->dot(e)) - 1.0) > 1e-12) {
            throw ConfigError("anisotropic data members do not share one axis");
        }
    }
    return axis;
}

cplx DataSet::transform_slice(DataRole role, double r, double u, int n) const {
    return SliceTransform(*this, n)(r, u)[static_cast<int>(role)];
}

cplx DataSet::transform(DataRole role, const Eigen::VectorXd& xi) const {
    cplx sum = 0.0;
    for (const auto& s : items)
        if (s.role == role) sum += fourier_transform(s, xi);
    return sum;
}

DataSet DataSet::scaled(double factor) const {
    DataSet d = *this;
    for (auto& s : d.items) s.amplitude *= factor;
    return d;
}

SliceTransform::SliceTransform(const DataSet& d, int n) {
    std::optional<Eigen::VectorXd> e = d.slice_axis(n);
    for (const auto& s : d.items) {
        Term t;
        t.kind = s.kind;
        t.role = static_cast<int>(s.role);
        t.mass = s.amplitude * gauss_mass(s.width, n);
        t.a2 = s.width * s.width;
        t.aniso = is_anisotropic(s);
        t.proj = 0.0;
        if (t.aniso) {
            Eigen::VectorXd v = s.kind == DataKind::OddGaussian ? direction_of(s, n) : s.shift;
            t.proj = v.dot(*e);
            radial_ = false;
        }
        terms_.push_back(t);
    }
}

std::array<cplx, 3> SliceTransform::operator()(double r, double u) const {
    std::array<cplx, 3> out{0.0, 0.0, 0.0};
    for (const auto& t : terms_) {
        const double g = t.mass * std::exp(-0.25 * t.a2 * r * r);
        if (!t.aniso) {
            out[t.role] += g;
            continue;
        }
        const double xv = r * u * t.proj;
        if (t.kind == DataKind::ShiftedGaussian)
            out[t.role] += std::polar(g, -xv);
        else
            out[t.role] += cplx(0.0, -0.5 * t.a2 * xv * g);
    }
    return out;
}

DataSet gaussian_phi1(double width, double amplitude) {
    DataSpec s;
    s.kind = DataKind::Gaussian;
    s.role = DataRole::Phi1;
    s.width = width;
    s.amplitude = amplitude;
    return DataSet{{s}};
}

}  // namespace tva
