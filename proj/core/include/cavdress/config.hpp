// config.hpp: physical inputs for the oscillator + reflecting-cavity system

#pragma once

#include <cstddef>
#include <numbers>

namespace cavdress {

inline constexpr std::size_t kDefaultTruncation = 20000;

/// Physical inputs. Any consistent unit system works; frequencies are angular.
/// Everything downstream depends on the cavity only through the mode spacing
/// pi * wave_speed / radius, which is where the unit conversion happens.
struct CavityConfig {
    double omega_bar = 1.0;  // renormalized oscillator frequency
    double g = 0.5;          // coupling constant (frequency)
    double radius = 1.0;     // cavity radius
    double wave_speed = 1.0; // field propagation speed
    std::size_t truncation = kDefaultTruncation; // field modes kept (K)

    /// Throws ValidationError naming the first violated invariant.
    void validate() const;

    double mode_spacing() const noexcept { return std::numbers::pi * wave_speed / radius; }
    double delta() const noexcept { return g / mode_spacing(); }
    /// Coupling normalization sqrt(4 g dw / pi).
    double eta() const noexcept;
    double field_frequency(std::size_t k) const noexcept {
        return static_cast<double>(k) * mode_spacing();
    }

    /// Builds a config from the dimensionless cavity size delta = g R / (pi c)
    /// with c = 1.
    static CavityConfig from_delta(double omega_bar, double g, double delta,
                                   std::size_t truncation = kDefaultTruncation);
};

struct DerivedParams {
    double mode_spacing; // pi c / R
    double delta;        // g / mode_spacing
};

DerivedParams derived_params(const CavityConfig& config);

} // namespace cavdress
