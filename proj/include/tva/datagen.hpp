#pragma once

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Core>

namespace tva {

using cplx = std::complex<double>;

enum class DataKind { Gaussian, ShiftedGaussian, OddGaussian };
enum class DataRole { Phi0, Phi1, T0 };

// amplitude * exp(-|x - shift|^2 / width^2), or amplitude * x_axis * exp(-|x|^2 / width^2)
struct DataSpec {
    DataKind kind = DataKind::Gaussian;
    DataRole role = DataRole::Phi1;
    double width = 1.0;
    double amplitude = 1.0;
    Eigen::VectorXd shift;  // ShiftedGaussian only, length n
    int axis = 0;           // OddGaussian only, zero-based
};

struct Moments {
    double P = 0.0;
    Eigen::VectorXd M;
};

// f^(xi) = \int e^{-i x.xi} f(x) dx
cplx fourier_transform(const DataSpec& s, const Eigen::VectorXd& xi);

Moments moments(const DataSpec& s, int n);

// \int (1 + |x|) |f(x)| dx; exact for Gaussian and OddGaussian, an upper bound
// for ShiftedGaussian.
double l11_norm(const DataSpec& s, int n);

// Initial data as sums of catalog members per role.
struct DataSet {
    std::vector<DataSpec> items;

    bool empty(DataRole role) const;
    Moments moments(DataRole role, int n) const;

    // Direction shared by every anisotropic member, or nullopt if the data is
    // radial. Throws ConfigError when two members disagree.
    std::optional<Eigen::VectorXd> slice_axis(int n) const;

    // Transform at |xi| = r, xi.e = r u with e the slice axis.
    cplx transform_slice(DataRole role, double r, double u, int n) const;
    cplx transform(DataRole role, const Eigen::VectorXd& xi) const;

    DataSet scaled(double factor) const;
};

// Allocation-free evaluator of DataSet::transform_slice for inner quadrature loops.
class SliceTransform {
public:
    SliceTransform(const DataSet& d, int n);

    // (phi0^, phi1^, T0^) at |xi| = r, xi.e = r u
    std::array<cplx, 3> operator()(double r, double u) const;
    bool radial() const { return radial_; }

private:
    struct Term {
        DataKind kind;
        int role;
        double mass, a2, proj;
        bool aniso;
    };
    std::vector<Term> terms_;
    bool radial_ = true;
};

DataSet gaussian_phi1(double width = 1.0, double amplitude = 1.0);

}  // namespace tva
