// small_cavity.hpp: first-order delta expansion for cavities much smaller
// than the coupling length, and the non-dissipation bound that follows

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cavdress/config.hpp"
#include "cavdress/evolution.hpp"
#include "cavdress/spectrum.hpp"

namespace cavdress {

inline constexpr std::size_t kSmallCavityTruncation = 1000;

struct SmallCavityModelOptions {
    double delta_max = 0.2;
    LowestModeShift lowest_mode = LowestModeShift::third_pi;
    std::size_t truncation = kSmallCavityTruncation;
};

/// Approximate spectrum and particle-row weights to first order in delta:
///   (t_0^0)^2 ~ w0 = (1 + 2 pi delta / 3)^{-1}
///   (t_0^k)^2 ~ w0 * 4 delta / (pi k^2)
///   Omega_0 ~ omega_bar (1 - c delta),  Omega_k ~ (g/delta)(k + 2 delta/(pi k))
/// w0 comes from the normalization condition, so the weights sum to 1 as
/// K -> infinity.
struct SmallCavityModel {
    double delta = 0.0;
    double omega_bar = 0.0;
    double g = 0.0;
    std::size_t truncation = 0;
    double weight0 = 1.0;
    std::vector<double> mode_weights; // 4 delta / (pi k^2), k = 1..K (index k-1)
    double lowest_frequency = 0.0;
    LowestModeShift lowest_mode = LowestModeShift::third_pi;
    /// delta < 2 g^2 / (pi omega_bar^2). When false the lowest normal mode is
    /// not the one near omega_bar and the expansion is formally outside its
    /// stated range; the model is still built.
    bool lowest_mode_condition = true;
    /// 1 - sum of all retained weights: w0 (4 delta / pi) sum_{k>K} k^-2.
    double tail = 0.0;

    double mode_frequency(std::size_t k) const noexcept;
};

/// Throws DeltaOutOfRange unless 0 < delta <= delta_max.
SmallCavityModel make_small_cavity_model(double omega_bar, double g, double delta,
                                         const SmallCavityModelOptions& options = {});
SmallCavityModel make_small_cavity_model(const CavityConfig& config,
                                         const SmallCavityModelOptions& options = {});

/// w0 [e^{-i Omega_0 t} + sum_k (4 delta / (pi k^2)) e^{-i Omega_k t}];
/// leakage_bound is the truncated weight.
SurvivalAmplitude f00_small(double t, const SmallCavityModel& model);

/// xi w0^2 {1 + (8 delta/pi) sum_k k^-2 cos[(Omega_0 - Omega_k) t]
///          + (16 delta^2/pi^2) sum_{k,l} (k l)^-2 cos[(k - l)(g/delta - 2g/(pi k l)) t]}
/// summed term by term. O(K^2); equal to xi |f00_small|^2.
double rho11_small(double t, const SmallCavityModel& model, double xi);

/// xi [1 - (8/3) pi delta + (8/9) pi^2 delta^2]. Positive only for
/// delta < ~0.1398.
double rho11_lower_bound(double delta, double xi);

struct GridMinimum {
    double t = 0.0;
    double value = 0.0;
    std::size_t evaluations = 0;
};

/// Minimum of f over n_points equally spaced samples of [t_start, t_end],
/// refined by golden-section search between the neighbours of the best
/// sample. Ties go to the smaller t. Grid evaluation runs in parallel; the
/// result does not depend on the thread count.
GridMinimum minimize_on_grid(const std::function<double(double)>& f, double t_start, double t_end,
                             std::size_t n_points);

enum class Dissipation { dissipative, nondissipative };
enum class EvidenceKind { analytic_bound, decay_envelope, empirical };

const char* to_string(Dissipation verdict) noexcept;
const char* to_string(EvidenceKind kind) noexcept;

struct ClassifierOptions {
    double delta_max = 0.2;
    double floor = 1e-2;            // on rho11 / xi
    double probe_horizon = 1e3;     // in units of 1 / omega_bar
    std::size_t probe_points = 20000;
    std::size_t empirical_truncation = 2000;
    LowestModeShift lowest_mode = LowestModeShift::third_pi;
};

struct Classification {
    Dissipation verdict = Dissipation::dissipative;
    EvidenceKind evidence = EvidenceKind::empirical;
    /// rho11 / xi behind the verdict: the analytic bound, |f00(T_probe)|^2 for
    /// the continuum, or the probed minimum.
    double rho11_over_xi = 0.0;
    double probe_time = 0.0;
    std::vector<std::string> warnings;
};

/// delta == nullopt means an infinite cavity (continuum).
Classification dissipation_classifier(double omega_bar, double g, std::optional<double> delta,
                                      const ClassifierOptions& options = {});
Classification dissipation_classifier(const CavityConfig& config,
                                      const ClassifierOptions& options = {});

} // namespace cavdress
