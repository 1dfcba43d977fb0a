// coupling.hpp: principal-axis transformation matrix, renormalized-coordinate
// coefficients and dressed/eigenstate overlaps

#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "cavdress/config.hpp"
#include "cavdress/spectrum.hpp"

namespace cavdress {

struct CouplingOptions {
    /// Keep the (eta^2/2)(3 Omega^2 - omega_bar^2) term of t_0^r. It vanishes
    /// in the continuum limit; dropping it is only for comparison runs.
    bool keep_eta_term = true;
    /// Compute every column's normalization defect at build time (O(K^2)).
    /// When false, column_defect(r) still works on demand.
    bool column_defects = true;
};

/// Columns t_mu^r of the orthogonal matrix taking normal coordinates to bare
/// ones, mu = 0 (particle) or k = 1..K (field), r = 0..K (normal mode).
///
/// Only the particle row t_0^r is stored. Field entries are
///   t_k^r = eta omega_k / (omega_k^2 - Omega_r^2) * t_0^r
/// and are formed on demand, so memory stays O(K). Sign convention: t_0^r > 0.
class CouplingTable {
public:
    CouplingTable(const CavityConfig& config, Spectrum spectrum, const CouplingOptions& options);

    std::size_t truncation() const noexcept { return spectrum_.truncation(); }
    std::size_t size() const noexcept { return t0_.size(); }
    double eta() const noexcept { return eta_; }
    const Spectrum& spectrum() const noexcept { return spectrum_; }

    double t0(std::size_t r) const { return t0_.at(r); }
    std::span<const double> particle_row() const noexcept { return t0_; }
    double tk(std::size_t k, std::size_t r) const;
    /// t_mu^r with mu = 0 for the particle row.
    double entry(std::size_t mu, std::size_t r) const { return mu == 0 ? t0(r) : tk(mu, r); }

    /// |1 - sum_r (t_0^r)^2|: how much of the particle's weight sits in
    /// normal modes beyond the truncation.
    double particle_row_defect() const noexcept { return row_defect_; }

    /// |1 - (t_0^r)^2 - sum_{k<=K} (t_k^r)^2| for one column.
    double column_defect(std::size_t r) const;
    /// All column defects if they were computed at build time, else empty.
    const std::vector<double>& column_defects() const noexcept { return column_defects_; }

private:
    Spectrum spectrum_;
    double eta_ = 0.0;
    std::vector<double> t0_;
    double row_defect_ = 0.0;
    std::vector<double> column_defects_;
};

/// Throws ResonanceDegeneracy when some omega_k^2 - Omega_r^2 is lost to
/// rounding relative to omega_k^2.
CouplingTable build_couplings(const CavityConfig& config, const Spectrum& spectrum,
                              const CouplingOptions& options = {});

/// (t_0^0)^2, the dressed particle's weight on the lowest normal mode.
double t00_squared(const CouplingTable& table);

/// Renormalized-coordinate coefficients
///   alpha_{mu nu} = omega_mu^{-1/2} sum_r t_mu^r t_nu^r Omega_r^{1/2}
/// with omega_0 = omega_bar and omega_k = k dw.
double alpha_entry(const CavityConfig& config, const CouplingTable& table, std::size_t mu,
                   std::size_t nu);

/// Dense leading block of alpha, indices 0..block-1. The full matrix is
/// (K+1)^2 and costs O(K^3); request only what is needed.
struct AlphaMatrix {
    std::size_t block = 0;
    std::vector<double> values; // row-major block x block

    double operator()(std::size_t mu, std::size_t nu) const { return values.at(mu * block + nu); }
};

AlphaMatrix alpha_matrix(const CavityConfig& config, const Spectrum& spectrum,
                         const CouplingTable& table, std::size_t block);

/// Overlap between the state with mode mu excited N times and the eigenstate
/// with occupations l_0..l_K:
///   sqrt(N! / (l_0! l_1! ...)) prod_r (t_mu^r)^{l_r}
/// Throws OccupationMismatch when sum l != N and OverflowGuard when N > 20.
double overlap_coefficient(const CouplingTable& table, std::size_t mu,
                           std::span<const unsigned> occupations, unsigned quanta);

/// CSV with columns r, t0r, defect_r. Column defects are computed on demand
/// when the table was built without them.
void write_coupling_csv(std::ostream& out, const CouplingTable& table);

/// CSV with columns k, r, tkr for every field entry. Large: K (K+1) rows.
void write_coupling_matrix_csv(std::ostream& out, const CouplingTable& table);

} // namespace cavdress
