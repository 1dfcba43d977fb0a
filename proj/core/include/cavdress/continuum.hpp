// continuum.hpp: infinite-cavity limit of the survival amplitude
//
// f00(t) = (4g/pi) int_0^inf W^2 e^{-iWt} / ((W^2 - wb^2)^2 + 4 g^2 W^2) dW
//
// The real part has a closed form in each damping regime; the imaginary part
// G(t) is evaluated numerically.

#pragma once

#include <cstddef>

#include "cavdress/errors.hpp"
#include "cavdress/evolution.hpp"
#include "cavdress/quadrature.hpp"

namespace cavdress {

enum class DampingRegime { underdamped, critical, overdamped };

const char* to_string(DampingRegime regime) noexcept;

inline constexpr double kDefaultCriticalTolerance = 1e-6;

/// kappa^2 = omega_bar^2 - g^2 and the regime it implies.
struct KappaRegime {
    double kappa_sq = 0.0;
    DampingRegime regime = DampingRegime::underdamped;
};

/// |kappa^2| <= tol * omega_bar^2 counts as critical.
KappaRegime classify_regime(double omega_bar, double g, double tol = kDefaultCriticalTolerance);

/// Re f00(t):
///   kappa^2 > 0: e^{-gt} [cos kt - (g/k) sin kt]
///   kappa^2 = 0: e^{-gt} [1 - gt]
///   kappa^2 < 0: e^{-gt} [cosh |k|t - (g/|k|) sinh |k|t]
/// Whenever |kappa^2 t^2| <= 1 the three forms are evaluated through one power
/// series in kappa^2 t^2, which is exact at the critical point and continuous
/// across it.
double f00_real_closed(double t, double omega_bar, double g);

struct GIntegralOptions {
    double abs_target = 1e-14;   // what the integrator aims for
    double rel_target = 1e-11;
    double abs_contract = 1e-8;  // QuadratureStall beyond max(abs, rel * |value|)
    double rel_contract = 1e-6;
    double panel_rel_tol = 1e-12;
    std::size_t max_tail_terms = 400;
    std::size_t max_direct_panels = 200000;
};

struct QuadratureStall : NumericalError {
    QuadratureStall(const std::string& what, QuadratureReport partial_report)
        : NumericalError(what), partial(partial_report) {}
    QuadratureReport partial;
};

/// G(t) = -(4g/pi) int_0^inf y^2 sin(yt) / ((y^2 - wb^2)^2 + 4 g^2 y^2) dy.
///
/// Up to the end of the resonance region the integral is split at every
/// half-period of sin(yt) and at the resonance features, each panel adaptive
/// Gauss-Kronrod. Beyond that the integrand's envelope is monotone, so the
/// remaining half-period panels form an alternating series that is summed
/// with Wynn's epsilon algorithm. G(0) = 0 exactly.
QuadratureReport G_integral(double t, double omega_bar, double g, const GIntegralOptions& options = {});

/// Large-time form 8g / (pi wb^4 t^3), valid once every exponential in f00
/// has died out.
double G_asymptotic(double t, double omega_bar, double g);

/// f00 = f00_real_closed + i G_integral; leakage_bound reflects the quadrature
/// error estimate. The G report is copied to `g_report` when given.
SurvivalAmplitude f00_continuum(double t, double omega_bar, double g,
                                const GIntegralOptions& options = {},
                                QuadratureReport* g_report = nullptr);

/// Large-time reduced state under weak (g << wb) or strong (g >> wb) coupling.
/// `valid` says whether (g, t) lies inside the approximation's nominal range;
/// it is informational, never enforced.
struct ApproximateState {
    ReducedState state;
    bool valid = false;
};

ApproximateState rho_weak_asymptotic(double t, double omega_bar, double g,
                                     const SuperpositionSpec& spec);
ApproximateState rho_strong_asymptotic(double t, double omega_bar, double g,
                                       const SuperpositionSpec& spec);

/// "weak", "strong" or "none": which large-time approximation nominally
/// applies at (t, omega_bar, g).
const char* asymptotic_validity(double t, double omega_bar, double g) noexcept;

} // namespace cavdress
