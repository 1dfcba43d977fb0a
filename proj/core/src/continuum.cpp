#include "cavdress/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "cavdress/summation.hpp"

namespace cavdress {

namespace {

constexpr double pi = std::numbers::pi;

// Nominal ranges for the large-time approximations.
constexpr double kWeakMaxRatio = 0.2;   // g <= 0.2 wb
constexpr double kStrongMinRatio = 5.0; // g >= 5 wb
constexpr double kLargeTime = 10.0;     // t >= 10 / wb

void require_params(double omega_bar, double g) {
    if (!(omega_bar > 0.0) || !(g > 0.0) || !std::isfinite(omega_bar) || !std::isfinite(g)) {
        throw ValidationError("omega_bar and g must be positive and finite");
    }
}

void require_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw ValidationError("time must be finite and >= 0");
}

// C(s) = sum (-s)^n / (2n)!, S(s) = sum (-s)^n / (2n+1)!, so that
// cos(kt) = C(k^2 t^2) and sin(kt)/k = t S(k^2 t^2) for either sign of k^2.
void even_odd_series(double s, double& c, double& sn) {
    double term_c = 1.0;
    double term_s = 1.0;
    c = 1.0;
    sn = 1.0;
    for (int n = 1; n < 40; ++n) {
        term_c *= -s / ((2.0 * n - 1.0) * (2.0 * n));
        term_s *= -s / ((2.0 * n) * (2.0 * n + 1.0));
        c += term_c;
        sn += term_s;
        if (std::abs(term_c) < 1e-18 * std::abs(c) && std::abs(term_s) < 1e-18 * std::abs(sn)) break;
    }
}

double spectral_weight(double y, double omega_bar, double g) {
    const double y2 = y * y;
    const double detune = y2 - omega_bar * omega_bar;
    return y2 / (detune * detune + 4.0 * g * g * y2);
}

// Sorted, de-duplicated breakpoints of [a, b] including both ends.
std::vector<double> panel_edges(double a, double b, std::vector<double> interior) {
    std::vector<double> edges{a, b};
    for (double x : interior) {
        if (x > a && x < b) edges.push_back(x);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

} // namespace

const char* to_string(DampingRegime regime) noexcept {
    switch (regime) {
    case DampingRegime::underdamped: return "underdamped";
    case DampingRegime::critical: return "critical";
    case DampingRegime::overdamped: return "overdamped";
    }
    return "unknown";
}

KappaRegime classify_regime(double omega_bar, double g, double tol) {
    require_params(omega_bar, g);
    KappaRegime k;
    k.kappa_sq = (omega_bar - g) * (omega_bar + g);
    if (std::abs(k.kappa_sq) <= tol * omega_bar * omega_bar) {
        k.regime = DampingRegime::critical;
    } else {
        k.regime = k.kappa_sq > 0 ? DampingRegime::underdamped : DampingRegime::overdamped;
    }
    return k;
}

double f00_real_closed(double t, double omega_bar, double g) {
    require_params(omega_bar, g);
    require_time(t);
    const double kappa_sq = (omega_bar - g) * (omega_bar + g);
    const double s = kappa_sq * t * t;

    if (std::abs(s) <= 1.0) {
        double c = 0.0, sn = 0.0;
        even_odd_series(s, c, sn);
        return std::exp(-g * t) * (c - g * t * sn);
    }
    if (kappa_sq > 0.0) {
        const double k = std::sqrt(kappa_sq);
        return std::exp(-g * t) * (std::cos(k * t) - (g / k) * std::sin(k * t));
    }
    // cosh/sinh expanded into decaying exponentials to avoid overflow;
    // g - |k| = wb^2 / (g + |k|) keeps the slow rate accurate.
    const double k = std::sqrt(-kappa_sq);
    const double slow = omega_bar * omega_bar / (g + k);
    const double fast = g + k;
    return 0.5 * (1.0 - g / k) * std::exp(-slow * t) + 0.5 * (1.0 + g / k) * std::exp(-fast * t);
}

QuadratureReport G_integral(double t, double omega_bar, double g, const GIntegralOptions& options) {
    require_params(omega_bar, g);
    require_time(t);
    QuadratureReport report;
    if (t == 0.0) return report;

    auto integrand = [=](double y) { return spectral_weight(y, omega_bar, g) * std::sin(y * t); };
    const double half_period = pi / t;

    // Resonance features; beyond max(wb + 3g, 2 wb) the weight is monotone
    // decreasing (it already is for y > wb) and smooth on the scale of g.
    const double feature_end = std::max(omega_bar + 3.0 * g, 2.0 * omega_bar);
    std::vector<double> features{omega_bar, omega_bar - 3.0 * g, omega_bar + 3.0 * g, 2.0 * g,
                                 0.5 * omega_bar * omega_bar / g, omega_bar * omega_bar / g};
    for (double x = feature_end; x < half_period; x *= 2.0) features.push_back(x);

    const auto direct_halves =
        static_cast<std::size_t>(std::max(1.0, std::ceil(feature_end / half_period)));
    if (direct_halves > options.max_direct_panels) {
        throw QuadratureStall("G integral: t=" + std::to_string(t) +
                                  " needs too many half-period panels",
                              report);
    }
    const double direct_end = static_cast<double>(direct_halves) * half_period;

    CompensatedSum direct;
    double error = 0.0;
    std::size_t intervals = 0;
    for (std::size_t j = 0; j < direct_halves; ++j) {
        const double a = static_cast<double>(j) * half_period;
        const double b = static_cast<double>(j + 1) * half_period;
        const auto edges = panel_edges(a, b, features);
        for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
            const auto panel = integrate_panel(integrand, edges[e], edges[e + 1], options.panel_rel_tol);
            direct += panel.value;
            error += panel.abs_error_estimate;
            intervals += panel.intervals_used;
        }
    }

    // Alternating tail over half-periods beyond direct_end.
    WynnEpsilon wynn;
    CompensatedSum partial;
    double last_term = 0.0;
    bool converged = false;
    double tail_error = 0.0;
    for (std::size_t j = 0; j < options.max_tail_terms; ++j) {
        const double a = direct_end + static_cast<double>(j) * half_period;
        const auto panel = integrate_panel(integrand, a, a + half_period, options.panel_rel_tol);
        partial += panel.value;
        error += panel.abs_error_estimate;
        intervals += panel.intervals_used;
        last_term = panel.value;
        wynn.push(partial.value());
        if (j >= 6) {
            const double scale = std::abs(direct.value() + wynn.estimate());
            const double target = std::max(options.abs_target, options.rel_target * scale);
            if (wynn.error() <= target) {
                converged = true;
                tail_error = wynn.error();
                break;
            }
        }
    }
    double tail = wynn.estimate();
    if (!converged) {
        // Fall back on the plain partial sum; the alternating-series bound is
        // the next term, no larger than the last one in magnitude.
        const double plain_error = std::abs(last_term);
        if (plain_error < wynn.error()) {
            tail = partial.value();
            tail_error = plain_error;
        } else {
            tail_error = wynn.error();
        }
    }

    const double scale = 4.0 * g / pi;
    report.value = -scale * (direct.value() + tail);
    report.abs_error_estimate = scale * (error + tail_error);
    report.intervals_used = intervals;
    report.accelerated = converged;

    const double contract =
        std::max(options.abs_contract, options.rel_contract * std::abs(report.value));
    if (!(report.abs_error_estimate <= contract) || !std::isfinite(report.value)) {
        throw QuadratureStall("G integral at t=" + std::to_string(t) + " reached error estimate " +
                                  std::to_string(report.abs_error_estimate),
                              report);
    }
    return report;
}

double G_asymptotic(double t, double omega_bar, double g) {
    require_params(omega_bar, g);
    if (!(t > 0.0)) throw ValidationError("G_asymptotic needs t > 0");
    const double w4 = omega_bar * omega_bar * omega_bar * omega_bar;
    return 8.0 * g / (pi * w4 * t * t * t);
}

SurvivalAmplitude f00_continuum(double t, double omega_bar, double g,
                                const GIntegralOptions& options, QuadratureReport* g_report) {
    const double re = f00_real_closed(t, omega_bar, g);
    const auto im = G_integral(t, omega_bar, g, options);
    if (g_report) *g_report = im;
    const double slack = 10.0 * im.abs_error_estimate;
    return {t, {re, im.value}, AmplitudeMethod::continuum, slack * (2.0 + slack)};
}

namespace {

ReducedState approximate_state(double t, double p, std::complex<double> coherence_amplitude,
                               const SuperpositionSpec& spec) {
    const double xi = spec.xi;
    ReducedState s;
    s.t = t;
    s.rho11 = xi * p;
    s.rho00 = 1.0 - s.rho11;
    s.rho10 = std::sqrt(xi * (1.0 - xi)) * std::polar(1.0, -spec.phi) * coherence_amplitude;
    s.rho01 = std::conj(s.rho10);
    s.impurity = 2.0 * s.rho11 * (xi - s.rho11);
    return s;
}

} // namespace

ApproximateState rho_weak_asymptotic(double t, double omega_bar, double g,
                                     const SuperpositionSpec& spec) {
    const double power = G_asymptotic(t, omega_bar, g);
    const double osc =
        std::cos(omega_bar * t) - (g / omega_bar) * std::sin(omega_bar * t);
    const double p = std::exp(-2.0 * g * t) * osc * osc + power * power;
    const std::complex<double> coherence{std::exp(-g * t) * osc, power};
    const bool valid = g <= kWeakMaxRatio * omega_bar && t >= kLargeTime / omega_bar;
    return {approximate_state(t, p, coherence, spec), valid};
}

ApproximateState rho_strong_asymptotic(double t, double omega_bar, double g,
                                       const SuperpositionSpec& spec) {
    const double power = G_asymptotic(t, omega_bar, g);
    const double p = std::exp(-4.0 * g * t) + power * power;
    const std::complex<double> coherence{std::exp(-2.0 * g * t), power};
    const bool valid = g >= kStrongMinRatio * omega_bar && t >= kLargeTime / omega_bar;
    return {approximate_state(t, p, coherence, spec), valid};
}

const char* asymptotic_validity(double t, double omega_bar, double g) noexcept {
    if (!(t >= kLargeTime / omega_bar)) return "none";
    if (g <= kWeakMaxRatio * omega_bar) return "weak";
    if (g >= kStrongMinRatio * omega_bar) return "strong";
    return "none";
}

} // namespace cavdress
