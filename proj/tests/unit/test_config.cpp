#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cavdress/config.hpp"
#include "cavdress/errors.hpp"

using namespace cavdress;

TEST_CASE("derived parameters of the microwave-cavity example") {
    const double wb = 2e11;
    const CavityConfig c{wb, wb / 137.0, 1e-2, 3e8, 10};
    const auto d = derived_params(c);
    CHECK(d.mode_spacing == doctest::Approx(std::numbers::pi * 3e8 / 1e-2).epsilon(1e-15));
    CHECK(d.delta == doctest::Approx(0.0155).epsilon(0.01));
    CHECK(d.delta == doctest::Approx(wb / 137.0 * 1e-2 / (std::numbers::pi * 3e8)).epsilon(1e-14));
}

TEST_CASE("derived parameters: direct arithmetic") {
    const CavityConfig c{1.0, 0.5, std::numbers::pi, 5.0, 10};
    const auto d = derived_params(c);
    CHECK(d.mode_spacing == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(d.delta == doctest::Approx(0.1).epsilon(1e-15));

    // g equal to the spacing gives delta = 1
    const CavityConfig unit{1.0, 5.0, std::numbers::pi, 5.0, 10};
    CHECK(derived_params(unit).delta == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("invalid configurations name the violated invariant") {
    CavityConfig c;
    c.g = 0.0;
    CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("g must be positive"), ValidationError);
    c = CavityConfig{};
    c.radius = -1.0;
    CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("radius"), ValidationError);
    c = CavityConfig{};
    c.wave_speed = std::nan("");
    CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("wave_speed"), ValidationError);
    c = CavityConfig{};
    c.truncation = 0;
    CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("truncation"), ValidationError);
    c = CavityConfig{};
    c.omega_bar = -2.0;
    CHECK_THROWS_AS(derived_params(c), ValidationError);
}

TEST_CASE("from_delta reconstructs the radius with unit wave speed") {
    const auto c = CavityConfig::from_delta(1.0, 0.5, 0.1, 42);
    CHECK(c.wave_speed == 1.0);
    CHECK(c.truncation == 42);
    CHECK(c.delta() == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(c.mode_spacing() == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(c.eta() == doctest::Approx(std::sqrt(4.0 * 0.5 * 5.0 / std::numbers::pi)).epsilon(1e-15));
    CHECK(c.field_frequency(3) == doctest::Approx(15.0).epsilon(1e-15));
    CHECK_THROWS_AS(CavityConfig::from_delta(1.0, 0.5, 0.0), ValidationError);
}
