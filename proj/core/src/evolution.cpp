#include "cavdress/evolution.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "cavdress/errors.hpp"
#include "cavdress/summation.hpp"

namespace cavdress {

namespace {

// Slack for rounding in |f|^2 beyond the declared leakage.
constexpr double kRoundingSlack = 1e-12;

void check_consistent(const CouplingTable& table, const Spectrum& spectrum) {
    if (table.size() != spectrum.size()) {
        throw ValidationError("coupling table and spectrum have different mode counts");
    }
}

void check_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw ValidationError("time must be finite and >= 0");
}

} // namespace

SuperpositionSpec SuperpositionSpec::make(double xi, double phi) {
    if (!(xi > 0.0 && xi < 1.0)) {
        throw ValidationError("xi must lie in (0, 1) (got " + std::to_string(xi) + ")");
    }
    if (!std::isfinite(phi)) throw ValidationError("phi must be finite");
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double wrapped = std::fmod(phi, two_pi);
    if (wrapped < 0.0) wrapped += two_pi;
    if (wrapped >= two_pi) wrapped = 0.0;
    return {xi, wrapped};
}

const char* to_string(AmplitudeMethod method) noexcept {
    switch (method) {
    case AmplitudeMethod::mode_sum: return "mode_sum";
    case AmplitudeMethod::continuum: return "continuum";
    case AmplitudeMethod::small_cavity: return "small_cavity";
    }
    return "unknown";
}

std::complex<double> f_amplitude(std::size_t mu, std::size_t nu, double t,
                                 const CouplingTable& table, const Spectrum& spectrum) {
    check_consistent(table, spectrum);
    check_time(t);
    if (mu >= table.size() || nu >= table.size()) {
        throw IndexOutOfRange("amplitude index out of range (K=" +
                              std::to_string(table.truncation()) + ")");
    }
    CompensatedComplexSum sum;
    for (std::size_t s = 0; s < spectrum.size(); ++s) {
        const double w = table.entry(mu, s) * table.entry(nu, s);
        const double phase = spectrum.frequency(s) * t;
        sum += std::complex<double>(w * std::cos(phase), -w * std::sin(phase));
    }
    return sum.value();
}

SurvivalAmplitude f00_mode_sum(double t, const CouplingTable& table, const Spectrum& spectrum) {
    check_consistent(table, spectrum);
    check_time(t);
    CompensatedComplexSum sum;
    const auto row = table.particle_row();
    for (std::size_t s = 0; s < row.size(); ++s) {
        const double w = row[s] * row[s];
        const double phase = spectrum.frequency(s) * t;
        sum += std::complex<double>(w * std::cos(phase), -w * std::sin(phase));
    }
    return {t, sum.value(), AmplitudeMethod::mode_sum, table.particle_row_defect()};
}

double amplitude_norm(std::size_t mu, double t, const CouplingTable& table,
                      const Spectrum& spectrum) {
    check_consistent(table, spectrum);
    check_time(t);
    const std::size_t n = table.size();
    if (mu >= n) throw IndexOutOfRange("amplitude index out of range");

    // weights_s = t_mu^s e^{-i Omega_s t}; f_{mu nu} = sum_s t_nu^s weights_s
    std::vector<std::complex<double>> weights(n);
    for (std::size_t s = 0; s < n; ++s) {
        const double phase = spectrum.frequency(s) * t;
        weights[s] = table.entry(mu, s) * std::complex<double>(std::cos(phase), -std::sin(phase));
    }
    CompensatedSum norm;
    for (std::size_t nu = 0; nu < n; ++nu) {
        CompensatedComplexSum f;
        for (std::size_t s = 0; s < n; ++s) f += table.entry(nu, s) * weights[s];
        norm += std::norm(f.value());
    }
    return norm.value();
}

ReducedState reduced_density(const SurvivalAmplitude& f00, const SuperpositionSpec& spec) {
    const double p = std::norm(f00.value);
    if (!std::isfinite(p) || p > 1.0 + f00.leakage_bound + kRoundingSlack) {
        throw ContractViolation("|f00|^2 = " + std::to_string(p) + " exceeds 1 + leakage " +
                                std::to_string(f00.leakage_bound) + " at t=" +
                                std::to_string(f00.t));
    }
    const double xi = spec.xi;
    ReducedState s;
    s.t = f00.t;
    s.rho11 = xi * p;
    s.rho00 = 1.0 - s.rho11;
    s.rho10 = std::sqrt(xi * (1.0 - xi)) * std::polar(1.0, -spec.phi) * f00.value;
    s.rho01 = std::conj(s.rho10);
    s.impurity = 2.0 * xi * xi * p * (1.0 - p);
    return s;
}

ImpurityDefects impurity_identity_check(const ReducedState& state, const SuperpositionSpec& spec) {
    const double tr_rho2 = state.rho00 * state.rho00 + state.rho11 * state.rho11 +
                           (state.rho10 * state.rho01).real() + (state.rho01 * state.rho10).real();
    return {std::abs(state.impurity - 2.0 * state.rho11 * (spec.xi - state.rho11)),
            std::abs(state.impurity - (1.0 - tr_rho2))};
}

} // namespace cavdress
