// spectrum.hpp: normal-mode frequencies of the oscillator coupled to the cavity field

#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "cavdress/config.hpp"

namespace cavdress {

enum class SpectrumMethod { exact, small_cavity_asymptotic };

const char* to_string(SpectrumMethod method) noexcept;

/// Normal frequencies Omega_0 < Omega_1 < ... < Omega_K.
///
/// Root r always lives in the cell (r, r+1) of theta = Omega / dw, so each
/// root is stored as its in-cell offset. Gaps omega_k^2 - Omega_r^2 are then
/// formed from exact integer differences instead of subtracting two nearly
/// equal frequencies.
struct Spectrum {
    double spacing = 0.0;          // dw = pi c / R
    std::vector<double> offsets;   // theta_r - r, in (0, 1) for exact roots
    std::vector<double> residuals; // |cleared eigenvalue function| at each root
    SpectrumMethod method = SpectrumMethod::exact;

    std::size_t size() const noexcept { return offsets.size(); }
    std::size_t truncation() const noexcept { return offsets.empty() ? 0 : offsets.size() - 1; }

    double theta(std::size_t r) const noexcept { return static_cast<double>(r) + offsets[r]; }
    double frequency(std::size_t r) const noexcept { return theta(r) * spacing; }
    std::vector<double> frequencies() const;

    /// omega_k^2 - Omega_r^2 for field mode k >= 1.
    double field_gap(std::size_t k, std::size_t r) const noexcept;

    double max_residual() const noexcept;
};

struct RootSolverOptions {
    std::size_t scan_points = 64;  // sign-change scan resolution per pole cell
    double rel_tol = 1e-12;        // on the in-cell offset
    std::size_t max_iterations = 200;
    double residual_tol = 1e-8;    // acceptance threshold for the cleared residual
};

/// Cleared eigenvalue function on cell k, as a function of the offset
/// eps = theta - k in [0, 1]:
///
///   q_k(eps) = cos(pi eps) - sin(pi eps) * (theta / (2 delta) + a / theta)
///   a        = 1/pi - omega_bar^2 delta / (2 g^2)
///
/// It equals (-1)^k theta sin(pi theta) times the cotangent condition divided by
/// theta, has no poles, and has exactly one zero in (0, 1) on every cell.
double cleared_eigen_function(const CavityConfig& config, std::size_t cell, double offset);

/// cot(R Omega / c) - Omega/(2g) - (c/(R Omega)) (1 - R omega_bar^2 / (2 g c)),
/// the uncleared condition. Only meaningful away from the poles Omega = k dw.
double cotangent_condition(const CavityConfig& config, double omega);

/// Exact roots by sign-change scan plus Brent refinement on every cell.
/// Throws BracketFailure / NonPositiveLowestRoot.
Spectrum solve_spectrum(const CavityConfig& config, const RootSolverOptions& options = {});

/// Coefficient c in the small-cavity lowest mode Omega_0 ~ omega_bar (1 - c delta).
enum class LowestModeShift {
    third_pi, // pi/3: agrees with the exact lowest root to first order in delta
    half_pi,  // pi/2: the coefficient quoted in older small-cavity treatments
};

struct SmallCavityOptions {
    double delta_max = 0.2;
    LowestModeShift lowest_mode = LowestModeShift::third_pi;
};

double lowest_mode_coefficient(LowestModeShift shift) noexcept;

/// True when delta < 2 g^2 / (pi omega_bar^2), the regime where the lowest
/// normal mode sits just below omega_bar.
bool lowest_mode_condition(double omega_bar, double g, double delta) noexcept;

/// Omega_0 ~ omega_bar (1 - c delta), Omega_k ~ dw (k + 2 delta / (pi k)).
/// Throws DeltaOutOfRange when delta >= delta_max or the lowest-mode
/// condition fails.
Spectrum small_cavity_spectrum(const CavityConfig& config, const SmallCavityOptions& options = {});

/// CSV with columns r, omega_r, residual.
void write_spectrum_csv(std::ostream& out, const Spectrum& spectrum);

} // namespace cavdress
