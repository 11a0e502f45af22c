#include <doctest.h>

#include <cmath>
#include <sstream>

#include "tva/config.hpp"
#include "tva/errors.hpp"

using namespace tva;

namespace {

RunConfig parse(const std::string& s) {
    std::istringstream in(s);
    return parse_config(in);
}

}  // namespace

TEST_CASE("parameters from key-value lines") {
    const RunConfig c = parse("# canon with a twist\nnu0 = 0.05\nD_th=0.2\n\nn = 3  # trailing comment\n");
    CHECK(c.params.nu0 == 0.05);
    CHECK(c.params.D_th == 0.2);
    CHECK(c.params.n == 3);
    CHECK(c.n_given);
    CHECK_FALSE(c.data_given);
    CHECK(parse("eta_ratio_beta = 2\n").params.beta == 2.0);
}

TEST_CASE("primitive quantities") {
    const RunConfig c = parse("rho0 = 4\nkappaT = 1\ncP = 3\ncV = 2\n");
    CHECK(c.params.c0 == doctest::Approx(0.5));
    CHECK(c.params.gamma == doctest::Approx(1.5));
    CHECK_THROWS_AS(parse("rho0 = 4\nkappaT = 1\nc0 = 0.7\n"), ConfigError);
    CHECK_THROWS_AS(parse("cP = 1\ncV = 2\n"), ConfigError);
}

TEST_CASE("data keys") {
    const RunConfig c = parse("phi1.kind = odd_gaussian\nphi1.width = 2\nphi1.axis = 2\nT0.kind = shifted_gaussian\nT0.shift = 1, 0.5\nn = 2\n");
    REQUIRE(c.data_given);
    REQUIRE(c.data.items.size() == 2);
    const auto find = [&](DataRole role) -> const DataSpec& {
        for (const auto& s : c.data.items)
            if (s.role == role) return s;
        FAIL("missing role");
        return c.data.items.front();
    };
    const DataSpec& a = find(DataRole::Phi1);
    CHECK(a.kind == DataKind::OddGaussian);
    CHECK(a.role == DataRole::Phi1);
    CHECK(a.width == 2.0);
    CHECK(a.axis == 1);
    const DataSpec& b = find(DataRole::T0);
    CHECK(b.kind == DataKind::ShiftedGaussian);
    CHECK(b.role == DataRole::T0);
    REQUIRE(b.shift.size() == 2);
    CHECK(b.shift(1) == 0.5);
}

TEST_CASE("malformed input") {
    CHECK_THROWS_AS(parse("nu0 0.1\n"), ConfigError);
    CHECK_THROWS_AS(parse("nu0 = abc\n"), ConfigError);
    CHECK_THROWS_AS(parse("viscosity = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse("nu0 = 0.1\nnu0 = 0.2\n"), ConfigError);
    CHECK_THROWS_AS(parse("phi2.kind = gaussian\n"), ConfigError);
    CHECK_THROWS_AS(parse("phi1.kind = cauchy\n"), ConfigError);
    CHECK_THROWS_AS(parse("nu0 = 0.07\n"), ConfigError);
    CHECK_THROWS_AS(parse("nu0 = -1\n"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/path.cfg"), ConfigError);
}
