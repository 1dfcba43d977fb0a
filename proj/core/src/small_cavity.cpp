#include "cavdress/small_cavity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/special_functions/trigamma.hpp>

#include "cavdress/continuum.hpp"
#include "cavdress/coupling.hpp"
#include "cavdress/csv.hpp"
#include "cavdress/errors.hpp"
#include "cavdress/parallel.hpp"
#include "cavdress/summation.hpp"

namespace cavdress {

namespace {

constexpr double pi = std::numbers::pi;

void check_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw ValidationError("time must be finite and >= 0");
}

} // namespace

double SmallCavityModel::mode_frequency(std::size_t k) const noexcept {
    const double kk = static_cast<double>(k);
    return (g / delta) * kk + 2.0 * g / (pi * kk);
}

SmallCavityModel make_small_cavity_model(double omega_bar, double g, double delta,
                                         const SmallCavityModelOptions& options) {
    if (!(omega_bar > 0.0) || !(g > 0.0) || !std::isfinite(omega_bar) || !std::isfinite(g)) {
        throw ValidationError("omega_bar and g must be positive and finite");
    }
    if (!(delta > 0.0) || !(delta <= options.delta_max)) {
        throw DeltaOutOfRange("delta=" + format_double(delta) + " outside (0, " +
                              format_double(options.delta_max) + "]");
    }
    if (options.truncation < 1) throw ValidationError("small-cavity truncation must be >= 1");

    SmallCavityModel m;
    m.delta = delta;
    m.omega_bar = omega_bar;
    m.g = g;
    m.truncation = options.truncation;
    m.lowest_mode = options.lowest_mode;
    m.weight0 = 1.0 / (1.0 + 2.0 * pi * delta / 3.0);
    m.lowest_frequency = omega_bar * (1.0 - lowest_mode_coefficient(options.lowest_mode) * delta);
    m.lowest_mode_condition = lowest_mode_condition(omega_bar, g, delta);
    m.mode_weights.resize(options.truncation);
    for (std::size_t k = 1; k <= options.truncation; ++k) {
        const double kk = static_cast<double>(k);
        m.mode_weights[k - 1] = 4.0 * delta / (pi * kk * kk);
    }
    // sum_{k>K} k^-2 = psi'(K + 1)
    const double rest =
        boost::math::trigamma(static_cast<double>(options.truncation) + 1.0);
    m.tail = m.weight0 * 4.0 * delta / pi * rest;
    return m;
}

SmallCavityModel make_small_cavity_model(const CavityConfig& config,
                                         const SmallCavityModelOptions& options) {
    config.validate();
    return make_small_cavity_model(config.omega_bar, config.g, config.delta(), options);
}

SurvivalAmplitude f00_small(double t, const SmallCavityModel& model) {
    check_time(t);
    CompensatedComplexSum sum;
    const double p0 = model.lowest_frequency * t;
    sum += std::complex<double>(std::cos(p0), -std::sin(p0));
    for (std::size_t k = 1; k <= model.truncation; ++k) {
        const double w = model.mode_weights[k - 1];
        const double phase = model.mode_frequency(k) * t;
        sum += std::complex<double>(w * std::cos(phase), -w * std::sin(phase));
    }
    return {t, model.weight0 * sum.value(), AmplitudeMethod::small_cavity, model.tail};
}

double rho11_small(double t, const SmallCavityModel& model, double xi) {
    check_time(t);
    const std::size_t n = model.truncation;
    const double delta = model.delta;
    const double g = model.g;

    CompensatedSum single;
    for (std::size_t k = 1; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        single += std::cos((model.lowest_frequency - model.mode_frequency(k)) * t) / (kk * kk);
    }

    // Symmetric in (k, l): diagonal once, off-diagonal twice.
    CompensatedSum cross;
    for (std::size_t k = 1; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        cross += 1.0 / (kk * kk * kk * kk);
        for (std::size_t l = k + 1; l <= n; ++l) {
            const double ll = static_cast<double>(l);
            const double rate = (kk - ll) * (g / delta - 2.0 * g / (pi * kk * ll));
            cross += 2.0 * std::cos(rate * t) / (kk * kk * ll * ll);
        }
    }

    const double w0 = model.weight0;
    return xi * w0 * w0 *
           (1.0 + 8.0 * delta / pi * single.value() +
            16.0 * delta * delta / (pi * pi) * cross.value());
}

double rho11_lower_bound(double delta, double xi) {
    return xi * (1.0 - 8.0 / 3.0 * pi * delta + 8.0 / 9.0 * pi * pi * delta * delta);
}

GridMinimum minimize_on_grid(const std::function<double(double)>& f, double t_start, double t_end,
                             std::size_t n_points) {
    if (n_points < 2 || !(t_end > t_start)) {
        throw ValidationError("minimize_on_grid needs n_points >= 2 and t_end > t_start");
    }
    const double step = (t_end - t_start) / static_cast<double>(n_points - 1);
    auto at = [&](std::size_t i) {
        return i + 1 == n_points ? t_end : t_start + static_cast<double>(i) * step;
    };
    const auto values = parallel_map<double>(n_points, [&](std::size_t i) { return f(at(i)); });

    std::size_t best = 0;
    for (std::size_t i = 1; i < n_points; ++i) {
        if (values[i] < values[best]) best = i; // strict: ties keep the smaller t
    }

    GridMinimum result{at(best), values[best], n_points};

    double a = at(best == 0 ? 0 : best - 1);
    double b = at(std::min(best + 1, n_points - 1));
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    result.evaluations += 2;
    for (int it = 0; it < 80 && (b - a) > 1e-14 * std::max(1.0, std::abs(b)); ++it) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        ++result.evaluations;
    }
    const double t_refined = fc <= fd ? c : d;
    const double v_refined = std::min(fc, fd);
    if (v_refined < result.value) {
        result.t = t_refined;
        result.value = v_refined;
    }
    return result;
}

const char* to_string(Dissipation verdict) noexcept {
    return verdict == Dissipation::dissipative ? "dissipative" : "nondissipative";
}

const char* to_string(EvidenceKind kind) noexcept {
    switch (kind) {
    case EvidenceKind::analytic_bound: return "analytic_bound";
    case EvidenceKind::decay_envelope: return "decay_envelope";
    case EvidenceKind::empirical: return "empirical";
    }
    return "unknown";
}

Classification dissipation_classifier(double omega_bar, double g, std::optional<double> delta,
                                      const ClassifierOptions& options) {
    if (!(omega_bar > 0.0) || !(g > 0.0)) throw ValidationError("omega_bar and g must be positive");
    Classification c;
    c.probe_time = options.probe_horizon / omega_bar;

    if (!delta) {
        const auto f = f00_continuum(c.probe_time, omega_bar, g);
        c.verdict = Dissipation::dissipative;
        c.evidence = EvidenceKind::decay_envelope;
        c.rho11_over_xi = std::norm(f.value);
        return c;
    }
    if (!(*delta > 0.0) || !std::isfinite(*delta)) throw ValidationError("delta must be positive");

    const double bound = rho11_lower_bound(*delta, 1.0);
    if (*delta <= options.delta_max && bound > options.floor) {
        c.verdict = Dissipation::nondissipative;
        c.evidence = EvidenceKind::analytic_bound;
        c.rho11_over_xi = bound;
        if (!lowest_mode_condition(omega_bar, g, *delta)) {
            c.warnings.push_back("delta >= 2 g^2 / (pi omega_bar^2): the lowest normal mode is "
                                 "not the one near omega_bar; the bound is the first-order "
                                 "expansion's, not a statement about the exact spectrum");
        }
        return c;
    }

    const auto config = CavityConfig::from_delta(omega_bar, g, *delta, options.empirical_truncation);
    const auto spectrum = solve_spectrum(config);
    const auto table = build_couplings(config, spectrum, CouplingOptions{true, false});
    const auto min = minimize_on_grid(
        [&](double t) { return std::norm(f00_mode_sum(t, table, spectrum).value); }, 0.0,
        c.probe_time, options.probe_points);
    c.evidence = EvidenceKind::empirical;
    c.rho11_over_xi = min.value;
    c.verdict = min.value > options.floor ? Dissipation::nondissipative : Dissipation::dissipative;
    c.warnings.push_back("outside both asymptotic regimes; verdict from the exact mode sum over "
                         "the probe horizon with K=" + std::to_string(options.empirical_truncation));
    return c;
}

Classification dissipation_classifier(const CavityConfig& config, const ClassifierOptions& options) {
    config.validate();
    return dissipation_classifier(config.omega_bar, config.g, config.delta(), options);
}

} // namespace cavdress
