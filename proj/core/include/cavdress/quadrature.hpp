// quadrature.hpp: panel quadrature and series acceleration used by the
// continuum-limit integrals

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace cavdress {

/// Result of a numerical integral together with its honesty metadata.
struct QuadratureReport {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    std::size_t intervals_used = 0;
    bool accelerated = false;
};

/// Adaptive 21-point Gauss-Kronrod on [a, b]. `rel_tol` is relative to the
/// L1 norm of the integrand on the panel.
QuadratureReport integrate_panel(const std::function<double(double)>& f, double a, double b,
                                 double rel_tol, unsigned max_depth = 18);

/// Wynn's epsilon algorithm applied to a growing sequence of partial sums.
/// Keeps the full table; intended for a few hundred terms at most.
class WynnEpsilon {
public:
    /// Appends the next partial sum and returns the current best limit.
    double push(double partial_sum);

    double estimate() const noexcept { return estimate_; }
    /// Spread between the last few extrapolated limits.
    double error() const noexcept { return error_; }
    std::size_t terms() const noexcept { return count_; }

private:
    std::vector<double> diagonal_; // latest anti-diagonal: eps_k^{(n-k)}, k = 0..
    std::vector<double> history_;  // recent limits, for the error estimate
    double estimate_ = 0.0;
    double error_ = 0.0;
    std::size_t count_ = 0;
};

} // namespace cavdress
