#include "cavdress/coupling.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "cavdress/csv.hpp"
#include "cavdress/errors.hpp"
#include "cavdress/summation.hpp"

namespace cavdress {

namespace {

constexpr double kDegeneracyThreshold = 64.0 * std::numeric_limits<double>::epsilon();

double particle_weight_denominator(double omega, double omega_bar, double eta, double g,
                                   bool keep_eta_term) {
    const double w2 = omega * omega;
    const double wb2 = omega_bar * omega_bar;
    const double detune = w2 - wb2;
    double d = detune * detune + 4.0 * g * g * w2;
    if (keep_eta_term) d += 0.5 * eta * eta * (3.0 * w2 - wb2);
    return d;
}

void check_resonance(const Spectrum& s, std::size_t k, std::size_t r) {
    const double wk = static_cast<double>(k) * s.spacing;
    const double gap = s.field_gap(k, r);
    if (!(std::abs(gap) > kDegeneracyThreshold * wk * wk)) {
        throw ResonanceDegeneracy("normal mode " + std::to_string(r) +
                                  " is numerically degenerate with field mode " +
                                  std::to_string(k));
    }
}

} // namespace

CouplingTable::CouplingTable(const CavityConfig& config, Spectrum spectrum,
                             const CouplingOptions& options)
    : spectrum_(std::move(spectrum)), eta_(config.eta()) {
    const std::size_t n = spectrum_.size();
    const std::size_t K = spectrum_.truncation();
    for (std::size_t r = 0; r < n; ++r) {
        if (r >= 1 && r <= K) check_resonance(spectrum_, r, r);
        if (r + 1 <= K) check_resonance(spectrum_, r + 1, r);
    }

    t0_.resize(n);
    CompensatedSum row;
    for (std::size_t r = 0; r < n; ++r) {
        const double omega = spectrum_.frequency(r);
        const double denom =
            particle_weight_denominator(omega, config.omega_bar, eta_, config.g, options.keep_eta_term);
        t0_[r] = eta_ * omega / std::sqrt(denom);
        row += t0_[r] * t0_[r];
    }
    row_defect_ = std::abs(1.0 - row.value());

    if (options.column_defects) {
        std::vector<double> defects(n);
        for (std::size_t r = 0; r < n; ++r) defects[r] = column_defect(r);
        column_defects_ = std::move(defects);
    }
}

double CouplingTable::tk(std::size_t k, std::size_t r) const {
    if (k < 1 || k > truncation() || r >= size()) {
        throw IndexOutOfRange("t_k^r requested for k=" + std::to_string(k) + ", r=" +
                              std::to_string(r) + " with K=" + std::to_string(truncation()));
    }
    const double wk = static_cast<double>(k) * spectrum_.spacing;
    return eta_ * wk / spectrum_.field_gap(k, r) * t0_[r];
}

double CouplingTable::column_defect(std::size_t r) const {
    if (r >= size()) throw IndexOutOfRange("column " + std::to_string(r) + " out of range");
    if (!column_defects_.empty()) return column_defects_[r];
    CompensatedSum sum;
    sum += t0_[r] * t0_[r];
    const double scale = eta_ * spectrum_.spacing * t0_[r];
    for (std::size_t k = 1; k <= truncation(); ++k) {
        const double v = scale * static_cast<double>(k) / spectrum_.field_gap(k, r);
        sum += v * v;
    }
    return std::abs(1.0 - sum.value());
}

CouplingTable build_couplings(const CavityConfig& config, const Spectrum& spectrum,
                              const CouplingOptions& options) {
    config.validate();
    if (spectrum.truncation() != config.truncation) {
        throw ValidationError("spectrum truncation does not match config truncation");
    }
    return CouplingTable(config, spectrum, options);
}

double t00_squared(const CouplingTable& table) {
    const double t = table.t0(0);
    return t * t;
}

double alpha_entry(const CavityConfig& config, const CouplingTable& table, std::size_t mu,
                   std::size_t nu) {
    const std::size_t n = table.size();
    if (mu >= n || nu >= n) throw IndexOutOfRange("alpha index out of range");
    const double omega_mu = mu == 0 ? config.omega_bar : config.field_frequency(mu);
    const auto& s = table.spectrum();
    CompensatedSum sum;
    for (std::size_t r = 0; r < n; ++r) {
        sum += table.entry(mu, r) * table.entry(nu, r) * std::sqrt(s.frequency(r));
    }
    return sum.value() / std::sqrt(omega_mu);
}

AlphaMatrix alpha_matrix(const CavityConfig& config, const Spectrum& spectrum,
                         const CouplingTable& table, std::size_t block) {
    if (spectrum.size() != table.size()) throw ValidationError("spectrum/table size mismatch");
    if (block > table.size()) throw IndexOutOfRange("alpha block larger than K+1");
    AlphaMatrix a;
    a.block = block;
    a.values.resize(block * block);
    for (std::size_t mu = 0; mu < block; ++mu) {
        for (std::size_t nu = 0; nu < block; ++nu) {
            a.values[mu * block + nu] = alpha_entry(config, table, mu, nu);
        }
    }
    return a;
}

double overlap_coefficient(const CouplingTable& table, std::size_t mu,
                           std::span<const unsigned> occupations, unsigned quanta) {
    if (quanta > 20) throw OverflowGuard("overlap coefficient limited to N <= 20 quanta");
    if (occupations.size() > table.size()) {
        throw IndexOutOfRange("occupation vector longer than the number of normal modes");
    }
    if (mu >= table.size()) throw IndexOutOfRange("mode index out of range");

    auto factorial = [](unsigned n) {
        double f = 1.0;
        for (unsigned i = 2; i <= n; ++i) f *= i;
        return f;
    };

    unsigned total = 0;
    double denom = 1.0;
    double product = 1.0;
    for (std::size_t r = 0; r < occupations.size(); ++r) {
        const unsigned l = occupations[r];
        if (l == 0) continue;
        total += l;
        if (total > quanta) break;
        denom *= factorial(l);
        product *= std::pow(table.entry(mu, r), static_cast<double>(l));
    }
    if (total != quanta) {
        throw OccupationMismatch("occupations sum to " + std::to_string(total) +
                                 " but N = " + std::to_string(quanta));
    }
    return std::sqrt(factorial(quanta) / denom) * product;
}

void write_coupling_csv(std::ostream& out, const CouplingTable& table) {
    out << "r,t0r,defect_r\n";
    for (std::size_t r = 0; r < table.size(); ++r) {
        out << r << ',' << format_double(table.t0(r)) << ','
            << format_double(table.column_defect(r)) << '\n';
    }
}

void write_coupling_matrix_csv(std::ostream& out, const CouplingTable& table) {
    out << "k,r,tkr\n";
    for (std::size_t k = 1; k <= table.truncation(); ++k) {
        for (std::size_t r = 0; r < table.size(); ++r) {
            out << k << ',' << r << ',' << format_double(table.tk(k, r)) << '\n';
        }
    }
}

} // namespace cavdress
