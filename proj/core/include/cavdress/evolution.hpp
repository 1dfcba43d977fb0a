// evolution.hpp: dressed-state amplitudes and the particle's reduced density matrix

#pragma once

#include <complex>
#include <cstddef>

#include "cavdress/coupling.hpp"
#include "cavdress/spectrum.hpp"

namespace cavdress {

/// Initial state sqrt(xi) |1> + sqrt(1 - xi) e^{i phi} |0> of the dressed particle.
struct SuperpositionSpec {
    double xi = 0.5;
    double phi = 0.0; // normalized to [0, 2 pi)

    /// Validates 0 < xi < 1 and wraps phi into [0, 2 pi).
    static SuperpositionSpec make(double xi, double phi = 0.0);
};

enum class AmplitudeMethod { mode_sum, continuum, small_cavity };

const char* to_string(AmplitudeMethod method) noexcept;

/// f_00(t): amplitude for the dressed particle to still be excited at t.
struct SurvivalAmplitude {
    double t = 0.0;
    std::complex<double> value{1.0, 0.0};
    AmplitudeMethod method = AmplitudeMethod::mode_sum;
    double leakage_bound = 0.0; // truncation / quadrature slack on |value|^2
};

/// 2x2 reduced density matrix of the particle plus the impurity 1 - Tr rho^2.
struct ReducedState {
    double t = 0.0;
    double rho00 = 1.0;
    double rho11 = 0.0;
    std::complex<double> rho10{};
    std::complex<double> rho01{};
    double impurity = 0.0;
};

/// f_{mu nu}(t) = sum_s t_mu^s t_nu^s e^{-i Omega_s t}, ascending s, compensated.
/// The global phase e^{-i E_0 t} is omitted; it cancels in every element of rho.
std::complex<double> f_amplitude(std::size_t mu, std::size_t nu, double t,
                                 const CouplingTable& table, const Spectrum& spectrum);

/// f_00 specialized: sum_s (t_0^s)^2 e^{-i Omega_s t}.
SurvivalAmplitude f00_mode_sum(double t, const CouplingTable& table, const Spectrum& spectrum);

/// sum_nu |f_{mu nu}(t)|^2 over nu = 0..K. Exactly 1 for the untruncated system.
/// O(K^2).
double amplitude_norm(std::size_t mu, double t, const CouplingTable& table,
                      const Spectrum& spectrum);

/// rho00 = 1 - xi|f|^2, rho11 = xi|f|^2, rho10 = sqrt(xi(1-xi)) e^{-i phi} f,
/// rho01 = conj(rho10), D = 2 xi^2 |f|^2 (1 - |f|^2).
/// Throws ContractViolation when |f|^2 > 1 + leakage_bound.
ReducedState reduced_density(const SurvivalAmplitude& f00, const SuperpositionSpec& spec);

struct ImpurityDefects {
    double bilinear = 0.0; // |D - 2 rho11 (xi - rho11)|
    double trace = 0.0;    // |D - (1 - Tr rho^2)| from all four elements
};

ImpurityDefects impurity_identity_check(const ReducedState& state, const SuperpositionSpec& spec);

} // namespace cavdress
