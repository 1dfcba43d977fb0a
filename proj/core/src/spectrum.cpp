#include "cavdress/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <utility>

#include "cavdress/csv.hpp"
#include "cavdress/errors.hpp"

namespace cavdress {

namespace {

constexpr double pi = std::numbers::pi;

struct EigenCoefficients {
    double inv_two_delta; // 1 / (2 delta)
    double a;             // 1/pi - omega_bar^2 delta / (2 g^2)
};

EigenCoefficients eigen_coefficients(const CavityConfig& config) {
    const double delta = config.delta();
    const double wb = config.omega_bar;
    return {0.5 / delta, 1.0 / pi - wb * wb * delta / (2.0 * config.g * config.g)};
}

double cleared(const EigenCoefficients& c, std::size_t cell, double offset) {
    const double theta = static_cast<double>(cell) + offset;
    if (theta == 0.0) return 1.0 - pi * c.a; // limit of sin(pi eps) a / eps
    const double s = std::sin(pi * offset);
    const double co = std::cos(pi * offset);
    return co - s * (theta * c.inv_two_delta + c.a / theta);
}

// Brent's method on [lo, hi] with f(lo), f(hi) of opposite sign.
template <typename F>
double brent(F&& f, double lo, double hi, double flo, double fhi, double rel_tol,
             std::size_t max_iterations) {
    double a = lo, b = hi, fa = flo, fb = fhi;
    double c = a, fc = fa, d = b - a, e = d;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    for (std::size_t iter = 0; iter < max_iterations; ++iter) {
        if ((fb > 0) == (fc > 0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol = 2.0 * eps * std::abs(b) + 0.5 * rel_tol * std::abs(b) +
                           std::numeric_limits<double>::min();
        const double m = 0.5 * (c - b);
        if (std::abs(m) <= tol || fb == 0.0) return b;
        if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
            // secant or inverse quadratic interpolation
            double p, q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol) ? d : (m > 0 ? tol : -tol);
        fb = f(b);
    }
    return b;
}

std::string describe(const CavityConfig& config) {
    std::ostringstream os;
    os << "omega_bar=" << config.omega_bar << " g=" << config.g
       << " radius=" << config.radius << " wave_speed=" << config.wave_speed
       << " delta=" << config.delta();
    return os.str();
}

} // namespace

const char* to_string(SpectrumMethod method) noexcept {
    switch (method) {
    case SpectrumMethod::exact: return "exact";
    case SpectrumMethod::small_cavity_asymptotic: return "small_cavity_asymptotic";
    }
    return "unknown";
}

std::vector<double> Spectrum::frequencies() const {
    std::vector<double> out(size());
    for (std::size_t r = 0; r < size(); ++r) out[r] = frequency(r);
    return out;
}

double Spectrum::field_gap(std::size_t k, std::size_t r) const noexcept {
    // dw^2 (k - theta_r)(k + theta_r) with k - theta_r = (k - r) - eps_r exact
    const double diff = (static_cast<double>(k) - static_cast<double>(r)) - offsets[r];
    const double sum = static_cast<double>(k) + theta(r);
    return spacing * spacing * diff * sum;
}

double Spectrum::max_residual() const noexcept {
    double m = 0.0;
    for (double r : residuals) m = std::max(m, r);
    return m;
}

double cleared_eigen_function(const CavityConfig& config, std::size_t cell, double offset) {
    return cleared(eigen_coefficients(config), cell, offset);
}

double cotangent_condition(const CavityConfig& config, double omega) {
    const double rc = config.radius / config.wave_speed;
    const double x = rc * omega;
    const double wb = config.omega_bar;
    return std::cos(x) / std::sin(x) - omega / (2.0 * config.g) -
           (1.0 / x) * (1.0 - rc * wb * wb / (2.0 * config.g));
}

Spectrum solve_spectrum(const CavityConfig& config, const RootSolverOptions& options) {
    config.validate();
    if (options.scan_points < 1) throw ValidationError("scan_points must be positive");
    if (!(options.rel_tol > 0.0)) throw ValidationError("solver tolerance must be positive");

    const auto coeffs = eigen_coefficients(config);
    const std::size_t n = config.truncation + 1;

    Spectrum s;
    s.spacing = config.mode_spacing();
    s.method = SpectrumMethod::exact;
    s.offsets.resize(n);
    s.residuals.resize(n);

    const auto scan = static_cast<double>(options.scan_points);
    for (std::size_t cell = 0; cell < n; ++cell) {
        auto q = [&](double eps) { return cleared(coeffs, cell, eps); };

        double lo = 0.0;
        double flo = q(lo);
        double hi = lo;
        double fhi = flo;
        bool bracketed = false;
        for (std::size_t j = 1; j <= options.scan_points; ++j) {
            hi = static_cast<double>(j) / scan;
            fhi = q(hi);
            if (!std::isfinite(fhi) || !std::isfinite(flo)) break;
            if ((flo > 0) != (fhi > 0) || fhi == 0.0) {
                bracketed = true;
                break;
            }
            lo = hi;
            flo = fhi;
        }
        if (!bracketed) {
            const std::string msg = "no sign change of the cleared eigenvalue function in cell " +
                                    std::to_string(cell) + " (" + describe(config) + ")";
            if (cell == 0) throw NonPositiveLowestRoot(msg);
            throw BracketFailure(msg);
        }

        double eps = (fhi == 0.0) ? hi
                                  : brent(q, lo, hi, flo, fhi, options.rel_tol,
                                          options.max_iterations);
        if (!(eps > 0.0 && eps < 1.0)) {
            const std::string msg = "root escaped its pole cell " + std::to_string(cell) +
                                    " (" + describe(config) + ")";
            if (cell == 0) throw NonPositiveLowestRoot(msg);
            throw BracketFailure(msg);
        }
        s.offsets[cell] = eps;
        s.residuals[cell] = std::abs(q(eps));
        if (!(s.residuals[cell] <= options.residual_tol)) {
            throw BracketFailure("root in cell " + std::to_string(cell) + " has residual " +
                                 std::to_string(s.residuals[cell]) + " above tolerance (" +
                                 describe(config) + ")");
        }
    }
    return s;
}

double lowest_mode_coefficient(LowestModeShift shift) noexcept {
    return shift == LowestModeShift::half_pi ? pi / 2.0 : pi / 3.0;
}

bool lowest_mode_condition(double omega_bar, double g, double delta) noexcept {
    return delta < 2.0 * g * g / (pi * omega_bar * omega_bar);
}

Spectrum small_cavity_spectrum(const CavityConfig& config, const SmallCavityOptions& options) {
    config.validate();
    const double delta = config.delta();
    if (!(delta < options.delta_max)) {
        throw DeltaOutOfRange("small-cavity expansion needs delta < " +
                              std::to_string(options.delta_max) + " (" + describe(config) + ")");
    }
    if (!lowest_mode_condition(config.omega_bar, config.g, delta)) {
        throw DeltaOutOfRange("small-cavity lowest mode needs delta < 2 g^2 / (pi omega_bar^2) (" +
                              describe(config) + ")");
    }

    const auto coeffs = eigen_coefficients(config);
    const std::size_t n = config.truncation + 1;
    Spectrum s;
    s.spacing = config.mode_spacing();
    s.method = SpectrumMethod::small_cavity_asymptotic;
    s.offsets.resize(n);
    s.residuals.resize(n);

    const double omega0 =
        config.omega_bar * (1.0 - lowest_mode_coefficient(options.lowest_mode) * delta);
    s.offsets[0] = omega0 / s.spacing;
    for (std::size_t k = 1; k < n; ++k) {
        s.offsets[k] = 2.0 * delta / (pi * static_cast<double>(k));
    }
    for (std::size_t r = 0; r < n; ++r) {
        s.residuals[r] = std::abs(cleared(coeffs, r, s.offsets[r]));
    }
    return s;
}

void write_spectrum_csv(std::ostream& out, const Spectrum& spectrum) {
    out << "r,omega_r,residual\n";
    for (std::size_t r = 0; r < spectrum.size(); ++r) {
        out << r << ',' << format_double(spectrum.frequency(r)) << ','
            << format_double(spectrum.residuals[r]) << '\n';
    }
}

} // namespace cavdress
