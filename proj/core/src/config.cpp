#include "cavdress/config.hpp"

#include <cmath>
#include <string>

#include "cavdress/errors.hpp"

namespace cavdress {

namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw ValidationError(std::string(name) + " must be positive and finite (got " +
                              std::to_string(value) + ")");
    }
}

} // namespace

void CavityConfig::validate() const {
    require_positive(omega_bar, "omega_bar");
    require_positive(g, "g");
    require_positive(radius, "radius");
    require_positive(wave_speed, "wave_speed");
    if (truncation < 1) throw ValidationError("truncation K must be at least 1");
    require_positive(mode_spacing(), "mode spacing pi*c/R");
}

double CavityConfig::eta() const noexcept {
    return std::sqrt(4.0 * g * mode_spacing() / std::numbers::pi);
}

CavityConfig CavityConfig::from_delta(double omega_bar, double g, double delta,
                                      std::size_t truncation) {
    require_positive(delta, "delta");
    require_positive(g, "g");
    CavityConfig c;
    c.omega_bar = omega_bar;
    c.g = g;
    c.wave_speed = 1.0;
    c.radius = std::numbers::pi * delta / g;
    c.truncation = truncation;
    return c;
}

DerivedParams derived_params(const CavityConfig& config) {
    config.validate();
    return {config.mode_spacing(), config.delta()};
}

} // namespace cavdress
