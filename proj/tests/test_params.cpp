#include <doctest.h>

#include <cmath>

#include "tva/errors.hpp"
#include "tva/params.hpp"

using namespace tva;

TEST_CASE("canonical parameters validate") {
    for (int n = 1; n <= 3; ++n) CHECK_NOTHROW(validate(canon(n)));
    const PhysicalParams p = canon();
    CHECK(p.nu_eff() == doctest::Approx(0.2));
    CHECK(p.gamma * p.D_th == doctest::Approx(0.14));
}

TEST_CASE("validation errors") {
    PhysicalParams p = canon();
    p.nu0 = 0.07;
    CHECK_THROWS_AS(validate(p), DegenerateDiffusion);

    p = canon();
    p.cP = 1.0;
    p.cV = 2.0;
    p.gamma = std::nan("");
    CHECK_THROWS_AS(validate(resolve(p)), GammaNotGreaterThanOne);

    p = canon();
    p.D_th = 0.0;
    CHECK_THROWS_AS(validate(p), NonPositiveQuantity);
    p = canon();
    p.nu0 = -1.0;
    CHECK_THROWS_AS(validate(p), NonPositiveQuantity);
    p = canon();
    p.beta = 0.3;
    CHECK_THROWS_AS(validate(p), InvalidParameter);
}

TEST_CASE("primitive quantities determine c0 and gamma") {
    PhysicalParams p = canon();
    p.rho0 = 4.0;
    p.kappaT = 1.0;
    p.cP = 3.0;
    p.cV = 2.0;
    p.c0 = std::nan("");
    p.gamma = std::nan("");
    const PhysicalParams q = resolve(p);
    CHECK(q.c0 == doctest::Approx(0.5));
    CHECK(q.gamma == doctest::Approx(1.5));
    CHECK_NOTHROW(validate(q));

    p = q;
    p.c0 = 0.6;
    CHECK_THROWS_AS(validate(resolve(p)), InvalidParameter);
}

TEST_CASE("derived constants") {
    const DerivedConstants g = derive_constants(canon());
    CHECK(g.Gamma0 == doctest::Approx(0.12).epsilon(1e-14));
    const double G1 = (-0.0144 - 0.024 + 0.028) / (2.0 * std::sqrt(1.4));
    CHECK(g.Gamma1 == doctest::Approx(G1).epsilon(1e-12));
    CHECK(g.Gamma1 == doctest::Approx(-4.3948e-3).epsilon(1e-4));

    PhysicalParams p = canon();
    p.nu0 = 0.0;
    CHECK(derive_constants(p).Gamma0 == doctest::Approx(0.5 * 0.4 * 0.1));
}

TEST_CASE("Gamma0 scales with the diffusion constants") {
    PhysicalParams p = canon(), q = canon();
    q.nu0 *= 2.0;
    q.D_th *= 2.0;
    CHECK(derive_constants(q).Gamma0 == 2.0 * derive_constants(p).Gamma0);
    const DerivedConstants g = derive_constants(p);
    CHECK(g.Gamma0 > std::max(0.5 * p.nu_eff(), 0.5 * (p.gamma - 1.0) * p.D_th));
}

TEST_CASE("near-degenerate flag") {
    PhysicalParams p = canon();
    CHECK_FALSE(near_degenerate(p));
    p.nu0 = 0.07 + 1e-8;
    CHECK(near_degenerate(p));
    CHECK_NOTHROW(validate(p));
}
