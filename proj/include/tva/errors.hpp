#pragma once

#include <stdexcept>
#include <string>

namespace tva {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonPositiveQuantity : Error {
    std::string name;
    explicit NonPositiveQuantity(std::string n)
        : Error("non-positive quantity: " + n), name(std::move(n)) {}
};

struct GammaNotGreaterThanOne : Error {
    GammaNotGreaterThanOne() : Error("gamma must exceed 1") {}
};

struct DegenerateDiffusion : Error {
    DegenerateDiffusion() : Error("(1+beta)*nu0 equals gamma*D_th") {}
};

// beta <= 1/3 or primitive/derived parameters disagree
struct InvalidParameter : Error {
    using Error::Error;
};

struct DegenerateRoots : Error {
    double r;
    explicit DegenerateRoots(double rr)
        : Error("degenerate characteristic roots at r=" + std::to_string(rr)), r(rr) {}
};

struct IdentityViolated : Error {
    std::string which;
    double residual;
    IdentityViolated(std::string w, double res)
        : Error("identity violated: " + w + " residual " + std::to_string(res)),
          which(std::move(w)), residual(res) {}
};

struct StabilityViolated : Error {
    double r;
    explicit StabilityViolated(double rr)
        : Error("non-negative spectral abscissa at r=" + std::to_string(rr)), r(rr) {}
};

struct TailNotNegligible : Error {
    using Error::Error;
};

struct InsufficientWindow : Error {
    using Error::Error;
};

struct NotPlateaued : Error {
    double relative_increase;
    explicit NotPlateaued(double inc)
        : Error("integral still growing: relative increase " + std::to_string(inc)),
          relative_increase(inc) {}
};

struct SingularAtOrigin : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

}  // namespace tva
