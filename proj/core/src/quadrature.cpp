#include "cavdress/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace cavdress {

namespace {

using Rule = boost::math::quadrature::gauss_kronrod<double, 21>;

struct RuleResult {
    double value;
    double error; // absolute
    double l1;
};

RuleResult apply_rule(const std::function<double(double)>& f, double a, double b) {
    double error = 0.0;
    double l1 = 0.0;
    const double value = Rule::integrate(f, a, b, 0, 0.0, &error, &l1);
    return {value, error, l1};
}

struct Accumulator {
    double value = 0.0;
    double error = 0.0;
    std::size_t intervals = 0;
};

// Bisects until the local error meets its share of the target. On a panel
// that is already resolved to kResolved relative to its L1 norm, a split that
// fails to halve the error yet reproduces the parent value means the rule has
// hit rounding noise (sin(yt) at large yt, for instance); the children are
// accepted instead of recursing to max depth.
constexpr double kResolved = 1e-8;

void refine(const std::function<double(double)>& f, double a, double b, const RuleResult& whole,
            double target, unsigned depth, Accumulator& acc) {
    if (whole.error <= target || depth == 0) {
        acc.value += whole.value;
        acc.error += whole.error;
        ++acc.intervals;
        return;
    }
    const double mid = 0.5 * (a + b);
    const auto left = apply_rule(f, a, mid);
    const auto right = apply_rule(f, mid, b);
    const double split_error = left.error + right.error;
    const double shift = std::abs(left.value + right.value - whole.value);
    if (split_error >= 0.5 * whole.error && shift <= whole.error &&
        whole.error <= kResolved * whole.l1) {
        acc.value += left.value + right.value;
        acc.error += left.error + right.error;
        acc.intervals += 2;
        return;
    }
    refine(f, a, mid, left, 0.5 * target, depth - 1, acc);
    refine(f, mid, b, right, 0.5 * target, depth - 1, acc);
}

} // namespace

QuadratureReport integrate_panel(const std::function<double(double)>& f, double a, double b,
                                 double rel_tol, unsigned max_depth) {
    const auto whole = apply_rule(f, a, b);
    Accumulator acc;
    refine(f, a, b, whole, rel_tol * std::max(whole.l1, std::abs(whole.value)), max_depth, acc);
    QuadratureReport r;
    r.value = acc.value;
    r.abs_error_estimate = acc.error;
    r.intervals_used = acc.intervals;
    return r;
}

double WynnEpsilon::push(double partial_sum) {
    ++count_;
    std::vector<double> next;
    next.reserve(diagonal_.size() + 1);
    next.push_back(partial_sum);

    // eps_k^{(n-k)} = eps_{k-2}^{(n-k+1)} + 1 / (eps_{k-1}^{(n-k+1)} - eps_{k-1}^{(n-k)})
    for (std::size_t k = 1; k <= diagonal_.size(); ++k) {
        const double diff = next[k - 1] - diagonal_[k - 1];
        if (diff == 0.0 || !std::isfinite(diff)) break;
        const double lower = k >= 2 ? diagonal_[k - 2] : 0.0;
        const double v = lower + 1.0 / diff;
        if (!std::isfinite(v)) break;
        next.push_back(v);
    }

    // Highest even column is the extrapolated limit.
    const std::size_t even = (next.size() - 1) & ~std::size_t{1};
    estimate_ = next[even];

    history_.push_back(estimate_);
    if (history_.size() > 4) history_.erase(history_.begin());
    error_ = 0.0;
    for (std::size_t i = 0; i + 1 < history_.size(); ++i) {
        error_ = std::max(error_, std::abs(history_.back() - history_[i]));
    }
    if (history_.size() < 3) error_ = std::max(error_, std::abs(estimate_));

    diagonal_ = std::move(next);
    return estimate_;
}

} // namespace cavdress
