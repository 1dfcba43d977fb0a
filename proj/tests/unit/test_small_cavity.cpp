#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "cavdress/continuum.hpp"
#include "cavdress/coupling.hpp"
#include "cavdress/errors.hpp"
#include "cavdress/small_cavity.hpp"

using namespace cavdress;
constexpr double pi = std::numbers::pi;

TEST_CASE("model weights and frequencies") {
    const auto m = make_small_cavity_model(1.0, 0.5, 0.1);
    CHECK(m.truncation == kSmallCavityTruncation);
    CHECK(m.mode_weights.size() == kSmallCavityTruncation);
    CHECK(m.weight0 == doctest::Approx(1.0 / (1.0 + 2.0 * pi * 0.1 / 3.0)));
    CHECK(m.mode_weights[0] == doctest::Approx(4.0 * 0.1 / pi));
    CHECK(m.mode_weights[9] == doctest::Approx(4.0 * 0.1 / (pi * 100.0)));
    CHECK(m.mode_frequency(3) == doctest::Approx(5.0 * 3.0 + 1.0 / (3.0 * pi)));
    CHECK(m.lowest_frequency == doctest::Approx(1.0 - pi * 0.1 / 3.0));

    double sum = m.weight0;
    for (double w : m.mode_weights) sum += m.weight0 * w;
    CHECK(1.0 - sum == doctest::Approx(m.tail).epsilon(1e-6));
    CHECK(m.tail == doctest::Approx(m.weight0 * 4.0 * 0.1 / (pi * 1000.0)).epsilon(2e-3));

    SmallCavityModelOptions half;
    half.lowest_mode = LowestModeShift::half_pi;
    CHECK(make_small_cavity_model(1.0, 0.5, 0.1, half).lowest_frequency == doctest::Approx(1.0 - pi * 0.05));
}

TEST_CASE("model domain") {
    CHECK_THROWS_AS(make_small_cavity_model(1.0, 0.5, 0.0), DeltaOutOfRange);
    CHECK_THROWS_AS(make_small_cavity_model(1.0, 0.5, 0.25), DeltaOutOfRange);
    CHECK_THROWS_AS(make_small_cavity_model(1.0, 0.5, -0.1), DeltaOutOfRange);
    SmallCavityModelOptions wide;
    wide.delta_max = 0.5;
    CHECK_NOTHROW(make_small_cavity_model(1.0, 0.5, 0.25, wide));
    // lowest-mode condition delta < 2 g^2 / (pi wb^2) is a flag only
    CHECK(make_small_cavity_model(1.0, 0.5, 0.1).lowest_mode_condition);
    const auto physical = make_small_cavity_model(2e11, 2e11 / 137.0, 0.0155);
    CHECK(!physical.lowest_mode_condition);
}

TEST_CASE("f00_small starts at 1 minus the truncated weight") {
    const auto m = make_small_cavity_model(1.0, 0.5, 0.1);
    const auto f = f00_small(0.0, m);
    CHECK(f.method == AmplitudeMethod::small_cavity);
    CHECK(f.value.real() == doctest::Approx(1.0 - m.tail).epsilon(1e-14));
    CHECK(f.value.imag() == 0.0);
    CHECK(f.leakage_bound == m.tail);
}

TEST_CASE("double sum equals xi |f00_small|^2") {
    SmallCavityModelOptions opt;
    opt.truncation = 300;
    for (double delta : {0.01, 0.1, 0.2}) {
        const auto m = make_small_cavity_model(1.0, 0.5, delta, opt);
        for (double t : {0.0, 0.7, 3.0, 41.0}) {
            const double direct = rho11_small(t, m, 0.6);
            const double via_amplitude = 0.6 * std::norm(f00_small(t, m).value);
            INFO("delta=" << delta << " t=" << t);
            CHECK(std::abs(direct - via_amplitude) <= 1e-12);
        }
    }
}

TEST_CASE("lower bound values") {
    CHECK(rho11_lower_bound(0.016, 1.0) == doctest::Approx(0.8682).epsilon(1e-4));
    CHECK(rho11_lower_bound(0.0, 0.7) == doctest::Approx(0.7));
    CHECK(rho11_lower_bound(0.1, 1.0) == doctest::Approx(0.24997).epsilon(1e-4));
    CHECK(rho11_lower_bound(0.14, 1.0) < 0.0);
    CHECK(rho11_lower_bound(0.139, 1.0) > 0.0);
}

TEST_CASE("survival minimum respects the bound") {
    for (double delta : {0.016, 0.05, 0.1}) {
        const auto m = make_small_cavity_model(1.0, 0.5, delta);
        const auto best = minimize_on_grid([&](double t) { return std::norm(f00_small(t, m).value); },
                                           0.0, 1000.0, 20000);
        INFO("delta=" << delta);
        CHECK(best.value >= rho11_lower_bound(delta, 1.0) - 1e-3);
        CHECK(best.evaluations >= 20000);
    }
}

TEST_CASE("grid minimization") {
    const auto m = minimize_on_grid([](double t) { return (t - 0.3137) * (t - 0.3137); }, 0.0, 1.0, 11);
    CHECK(m.t == doctest::Approx(0.3137).epsilon(1e-6));
    CHECK(m.value < 1e-10);
    // ties go to the smaller t
    const auto tie = minimize_on_grid([](double) { return 1.0; }, 2.0, 3.0, 5);
    CHECK(tie.t == doctest::Approx(2.0));
    const auto a = minimize_on_grid([](double t) { return std::cos(7.0 * t) + 0.01 * t; }, 0.0, 20.0, 997);
    const auto b = minimize_on_grid([](double t) { return std::cos(7.0 * t) + 0.01 * t; }, 0.0, 20.0, 997);
    CHECK(a.t == b.t);
    CHECK(a.value == b.value);
}

TEST_CASE("small-cavity evolution is not periodic at the field spacing") {
    // Omega_k - k g/delta = 2g/(pi k) differs across modes, so no common period
    const auto m = make_small_cavity_model(1.0, 0.5, 0.1);
    const double period = 2.0 * pi * 0.1 / 0.5;
    double worst = 0.0;
    for (int n = 1; n <= 50; ++n) {
        const auto a = f00_small(0.0, m).value;
        const auto b = f00_small(n * period * 7.0, m).value;
        worst = std::max(worst, std::abs(a - b));
    }
    CHECK(worst > 1e-2);
}

TEST_CASE("small-cavity amplitude converges to the exact one at first order") {
    const double wb = 1.0, g = 0.5;
    std::vector<double> err;
    for (double delta : {0.04, 0.02, 0.01}) {
        auto c = CavityConfig::from_delta(wb, g, delta, 2000);
        const auto s = solve_spectrum(c);
        const auto tb = build_couplings(c, s);
        SmallCavityModelOptions opt;
        opt.truncation = 2000;
        const auto m = make_small_cavity_model(wb, g, delta, opt);
        double worst = 0.0;
        for (int i = 0; i <= 400; ++i) {
            const double t = 20.0 * i / 400.0;
            worst = std::max(worst, std::abs(f00_small(t, m).value - f00_mode_sum(t, tb, s).value));
        }
        err.push_back(worst);
    }
    CHECK(std::log2(err[0] / err[1]) > 1.6);
    CHECK(std::log2(err[1] / err[2]) > 1.6);
}

TEST_CASE("dissipation classifier") {
    const double wb = 2e11;
    const auto physical = dissipation_classifier(wb, wb / 137.0, 0.0155);
    CHECK(physical.verdict == Dissipation::nondissipative);
    CHECK(physical.evidence == EvidenceKind::analytic_bound);
    CHECK(physical.rho11_over_xi == doctest::Approx(0.87).epsilon(0.01));
    CHECK(!physical.warnings.empty());

    const auto open = dissipation_classifier(1.0, 0.5, std::nullopt);
    CHECK(open.verdict == Dissipation::dissipative);
    CHECK(open.evidence == EvidenceKind::decay_envelope);
    CHECK(open.rho11_over_xi < 1e-2);

    const auto large = dissipation_classifier(1.0, 0.5, 0.5);
    CHECK(large.evidence == EvidenceKind::empirical);
    CHECK(large.verdict == Dissipation::dissipative);

    const auto small = dissipation_classifier(1.0, 0.5, 0.05);
    CHECK(small.verdict == Dissipation::nondissipative);
    CHECK(small.evidence == EvidenceKind::analytic_bound);
    CHECK(small.warnings.empty());

    CHECK(std::string(to_string(Dissipation::nondissipative)) == "nondissipative");
    CHECK(std::string(to_string(EvidenceKind::decay_envelope)) == "decay_envelope");
}
