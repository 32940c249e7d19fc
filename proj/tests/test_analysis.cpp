#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dualjc/analysis.hpp"
#include "dualjc/closed_form.hpp"

using namespace dualjc;
using std::numbers::pi;

namespace {

const SubsystemPair kAB{Subsystem::AtomA, Subsystem::AtomB};

ModelParams params(double delta, double big_g) { return ModelParams::from_detuning(delta, big_g, 10.0 * big_g); }

/// Dead-interval length per period at zero detuning for the Phi family:
/// 2 pi / G - (4 / G) asin(sqrt(tan a)).
double dead_length(double alpha, double big_g) {
    return 2 * pi / big_g - 4 / big_g * std::asin(std::sqrt(std::tan(alpha)));
}

}  // namespace

TEST_CASE("scan of the psi family at zero detuning") {
    const auto s = scan(InitialState::psi(pi / 4), params(0.0, 1.0), kAB, 2 * pi, 201, Source::ClosedForm);
    REQUIRE(s.times.size() == 201);
    CHECK(s.times.front() == 0.0);
    CHECK(s.times.back() == 2 * pi);
    for (std::size_t i = 0; i < s.times.size(); ++i) {
        CHECK(std::abs(s.values[i] - std::pow(std::cos(s.times[i] / 2), 2)) <= 1e-12);
        if (i > 0) CHECK(s.times[i] > s.times[i - 1]);
    }
}

TEST_CASE("scan of the phi family at pi/4 only touches zero") {
    const auto p = params(0.0, 1.0);
    for (Source src : {Source::ClosedForm, Source::Oracle}) {
        const auto s = scan(InitialState::phi(pi / 4), p, kAB, 4 * pi, kDefaultSteps, src);
        const auto r = detect_death(s, default_zero_tol(src));
        CHECK(r.dead_intervals.empty());
        REQUIRE(r.touch_points.size() == 2);
        CHECK(r.touch_points[0] == doctest::Approx(pi).epsilon(1e-12));
        CHECK(r.touch_points[1] == doctest::Approx(3 * pi).epsilon(1e-12));
    }
}

TEST_CASE("weak coupling keeps the initial concurrence") {
    const auto s = scan(InitialState::psi(0.3), params(0.0, 1e-6), kAB, 1.0, 101, Source::ClosedForm);
    for (double v : s.values) CHECK(std::abs(v - std::abs(std::sin(0.6))) <= 1e-9);
    const auto so = scan(InitialState::psi(0.3), params(0.0, 1e-6), kAB, 1.0, 101, Source::Oracle);
    for (double v : so.values) CHECK(std::abs(v - std::abs(std::sin(0.6))) <= 1e-9);
}

TEST_CASE("scan preconditions") {
    const auto p = params(0.0, 1.0);
    CHECK_THROWS_AS(scan(InitialState::psi(0.3), p, kAB, 1.0, 1, Source::ClosedForm), ConfigError);
    CHECK_THROWS_AS(scan(InitialState::psi(0.3), p, kAB, 0.0, 10, Source::ClosedForm), ConfigError);
    CHECK_THROWS_AS(scan(InitialState::psi(0.3), p, {Subsystem::ModeA, Subsystem::ModeB}, 1.0, 10, Source::ClosedForm),
                    ConfigError);
    std::vector<Complex> amps(16, 0.0);
    amps[FockBasis(1).flatten({1, 1, 0, 0})] = 1.0;
    CHECK_THROWS_AS(scan(InitialState::custom(amps), p, kAB, 1.0, 10, Source::ClosedForm), ConfigError);
    CHECK_NOTHROW(scan(InitialState::custom(amps), p, kAB, 1.0, 10, Source::Oracle));
}

TEST_CASE("detect_death finds the phi interval at pi/12") {
    const auto s = scan(InitialState::phi(pi / 12), params(0.0, 1.0), kAB, 4 * pi, kDefaultSteps, Source::ClosedForm);
    const auto r = detect_death(s, kClosedFormZeroTol);
    REQUIRE(r.dead_intervals.size() == 2);
    // Frozen from bisection on a scipy expm propagation of the full model.
    CHECK(std::abs(r.dead_intervals[0].start - 1.0881762133641688) <= 1e-9);
    CHECK(std::abs(r.dead_intervals[0].end - 5.1950090938154165) <= 1e-9);
    CHECK(std::abs((r.dead_intervals[0].end - r.dead_intervals[0].start) - dead_length(pi / 12, 1.0)) <= 1e-9);
    CHECK(std::abs(r.dead_intervals[1].start - r.dead_intervals[0].start - 2 * pi) <= 1e-9);
    CHECK(std::abs(r.dead_intervals[1].end - r.dead_intervals[0].end - 2 * pi) <= 1e-9);
    CHECK(r.touch_points.empty());
    CHECK(r.period == doctest::Approx(2 * pi).epsilon(1e-15));
    CHECK(r.initial_concurrence == doctest::Approx(0.5).epsilon(1e-14));

    // sin^2(Gt/2) = tan(alpha) at both ends.
    for (const auto& iv : r.dead_intervals) {
        CHECK(std::abs(std::pow(std::sin(iv.start / 2), 2) - std::tan(pi / 12)) <= 1e-10);
        CHECK(std::abs(std::pow(std::sin(iv.end / 2), 2) - std::tan(pi / 12)) <= 1e-10);
    }
}

TEST_CASE("detect_death on oracle series uses grid resolution") {
    const auto s = scan(InitialState::phi(pi / 12), params(0.0, 1.0), kAB, 4 * pi, kDefaultSteps, Source::Oracle);
    const auto r = detect_death(s, kOracleZeroTol);
    REQUIRE(r.dead_intervals.size() == 2);
    const double h = 4 * pi / (kDefaultSteps - 1);
    CHECK(std::abs(r.dead_intervals[0].start - 1.0881762133641688) <= h);
    CHECK(std::abs(r.dead_intervals[0].end - 5.1950090938154165) <= h);
}

TEST_CASE("detect_death on psi series") {
    const auto zero = scan(InitialState::psi(pi / 4), params(0.0, 1.0), kAB, 4 * pi, kDefaultSteps, Source::ClosedForm);
    const auto r0 = detect_death(zero, kClosedFormZeroTol);
    CHECK(r0.dead_intervals.empty());
    REQUIRE(r0.touch_points.size() == 2);
    CHECK(r0.touch_points[0] == doctest::Approx(pi).epsilon(1e-12));
    CHECK(r0.touch_points[1] == doctest::Approx(3 * pi).epsilon(1e-12));

    const auto detuned = scan(InitialState::psi(pi / 4), params(1.0, 1.0), kAB, 4 * pi, kDefaultSteps, Source::ClosedForm);
    const auto r1 = detect_death(detuned, kClosedFormZeroTol);
    CHECK(r1.dead_intervals.empty());
    CHECK(r1.touch_points.empty());
    CHECK(r1.period == doctest::Approx(2 * pi / std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("detect_death classifies runs by length") {
    ConcurrenceSeries s;
    s.params = params(0.0, 1.0);
    s.source = Source::Oracle;
    for (int i = 0; i < 12; ++i) s.times.push_back(i * 0.5);
    //          0    1    2    3    4    5    6    7    8    9    10   11
    s.values = {0.5, 0.4, 0.0, 0.3, 0.4, 0.2, 0.0, 0.0, 0.0, 0.2, 0.3, 0.0};
    const auto r = detect_death(s, 1e-9);
    REQUIRE(r.dead_intervals.size() == 1);
    // Secant through (2.0, 0.4) and (2.5, 0.2) reaches zero at 3.0.
    CHECK(r.dead_intervals[0].start == doctest::Approx(3.0));
    // Secant through (5.0, 0.3) and (4.5, 0.2) reaches zero at 3.5, clamped to 4.0.
    CHECK(r.dead_intervals[0].end == doctest::Approx(4.0));
    REQUIRE(r.touch_points.size() == 2);
    CHECK(r.touch_points[0] == 1.0);
    CHECK(r.touch_points[1] == 5.5);

    ConcurrenceSeries empty;
    CHECK_THROWS_AS(detect_death(empty, 1e-9), ConfigError);
}

TEST_CASE("death threshold angle") {
    CHECK(death_threshold_alpha() == doctest::Approx(pi / 4).epsilon(1e-15));
    const auto p = params(0.0, 1.0);
    auto intervals = [&](double a) {
        return detect_death(scan(InitialState::phi(a), p, kAB, 4 * pi, kDefaultSteps, Source::ClosedForm),
                            kClosedFormZeroTol)
            .dead_intervals.size();
    };
    CHECK(intervals(0.3) > 0);
    CHECK(intervals(0.3) == detect_death(scan(InitialState::phi(0.3), p, kAB, 4 * pi, kDefaultSteps, Source::Oracle),
                                         kOracleZeroTol)
                                .dead_intervals.size());
    CHECK(intervals(pi / 4) == 0);
    CHECK(intervals(death_threshold_alpha() - 0.01) > 0);
    CHECK(intervals(death_threshold_alpha() + 0.01) == 0);
}

TEST_CASE("validate examples") {
    const auto r1 = validate(InitialState::psi(pi / 3), params(0.8, 1.4), 15.0, 500, 1e-9);
    CHECK(r1.pass);
    CHECK(r1.max_abs_error <= 1e-9);
    CHECK(r1.samples == 500);

    const auto r2 = validate(InitialState::phi(pi / 12), params(0.0, 1.0), 4 * pi, kDefaultSteps, 1e-9);
    CHECK(r2.pass);

    for (auto init : {InitialState::psi(0.0), InitialState::phi(0.0)}) {
        const auto r3 = validate(init, params(0.4, 1.0), 10.0, 300, 1e-9);
        CHECK(r3.pass);
        const auto s = scan(init, params(0.4, 1.0), kAB, 10.0, 300, Source::Oracle);
        for (double v : s.values) CHECK(v <= 1e-9);
    }

    const auto strict = validate(InitialState::psi(pi / 3), params(0.8, 1.4), 15.0, 50, 0.0);
    CHECK(strict.pass == (strict.max_abs_error <= 0.0));

    const auto c3 = validate(InitialState::phi(0.4), params(0.3, 1.0), 12.0, 200, 1e-9, 3);
    CHECK(c3.pass);

    CHECK_THROWS_AS(validate(InitialState::custom({}), params(0.0, 1.0), 1.0, 10, 1e-9), ConfigError);
}

TEST_CASE("sweep_alpha: death lengths shrink as the initial entanglement grows") {
    const auto p = params(0.0, 1.0);
    const std::vector<double> alphas{pi / 24, pi / 16, pi / 12};
    const auto entries = sweep_alpha(Family::PhiAlpha, p, alphas, 4 * pi, kDefaultSteps);
    REQUIRE(entries.size() == 3);
    double previous = 1e9;
    for (const auto& e : entries) {
        REQUIRE(!e.report.dead_intervals.empty());
        const auto& iv = e.report.dead_intervals.front();
        const double len = iv.end - iv.start;
        CHECK(std::abs(len - dead_length(e.alpha, 1.0)) <= 1e-9);
        CHECK(len < previous);
        previous = len;
    }

    std::vector<double> grid;
    for (int k = 1; k <= 20; ++k) grid.push_back(pi / 2 * k / 21.0);
    for (const auto& e : sweep_alpha(Family::PsiAlpha, p, grid, 4 * pi, kDefaultSteps))
        CHECK(e.report.dead_intervals.empty());

    std::vector<double> above;
    for (int k = 0; k < 10; ++k) above.push_back(death_threshold_alpha() + 0.02 + 0.07 * k);
    for (const auto& e : sweep_alpha(Family::PhiAlpha, p, above, 4 * pi, kDefaultSteps))
        CHECK(e.report.dead_intervals.empty());

    CHECK_THROWS_AS(sweep_alpha(Family::PhiAlpha, p, std::vector<double>{}, 1.0, 10), ConfigError);
    CHECK_THROWS_AS(sweep_alpha(Family::Custom, p, alphas, 1.0, 10), ConfigError);
}

TEST_CASE("monotone dead time below the threshold") {
    const auto p = params(0.0, 1.0);
    std::vector<double> grid;
    for (int k = 1; k <= 15; ++k) grid.push_back(death_threshold_alpha() * k / 16.0);
    const auto entries = sweep_alpha(Family::PhiAlpha, p, grid, 4 * pi, kDefaultSteps);
    for (std::size_t i = 1; i < entries.size(); ++i)
        CHECK(entries[i].report.total_dead_time() < entries[i - 1].report.total_dead_time());
}

TEST_CASE("death reports over sampled parameters") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> ua(0.02, pi / 2 - 0.02), ud(-2.0, 2.0), ug(0.2, 3.0);
    for (int i = 0; i < 25; ++i) {
        const double a = ua(rng), big_g = ug(rng);
        const auto p = params(ud(rng), big_g);
        const auto c = derive_constants(p);
        const double t_max = 2.0 * c.period();

        const auto psi = detect_death(scan(InitialState::psi(a), p, kAB, t_max, kDefaultSteps, Source::ClosedForm),
                                      kClosedFormZeroTol);
        CHECK(psi.dead_intervals.empty());
        CHECK(std::abs(psi.initial_concurrence - std::abs(std::sin(2 * a))) <= 1e-12);

        for (Source src : {Source::ClosedForm, Source::Oracle}) {
            const auto phi = detect_death(scan(InitialState::phi(a), p, kAB, t_max, kDefaultSteps, src),
                                          default_zero_tol(src));
            CHECK(std::abs(phi.initial_concurrence - std::abs(std::sin(2 * a))) <= 1e-12);
            // Revival: interval k+1 is interval k shifted by one period.
            const double h = t_max / (kDefaultSteps - 1);
            for (std::size_t k = 0; k + 1 < phi.dead_intervals.size(); ++k) {
                const auto& a0 = phi.dead_intervals[k];
                const auto& a1 = phi.dead_intervals[k + 1];
                if (a0.start == 0.0 || a1.end == t_max) continue;
                CHECK(std::abs(a1.start - a0.start - c.period()) <= h);
                CHECK(std::abs(a1.end - a0.end - c.period()) <= h);
            }
            for (double tp : phi.touch_points)
                for (const auto& iv : phi.dead_intervals) CHECK(!(tp >= iv.start && tp <= iv.end));
        }
    }
}

TEST_CASE("closed-form and oracle series agree pointwise") {
    for (const auto& [init, delta, big_g] :
         {std::tuple{InitialState::psi(pi / 3), 0.8, 1.4}, std::tuple{InitialState::phi(pi / 12), 0.0, 1.0},
          std::tuple{InitialState::phi(0.6), -1.1, 2.2}, std::tuple{InitialState::psi(0.2), 0.0, 0.5}}) {
        const auto p = params(delta, big_g);
        const auto a = scan(init, p, kAB, 15.0, 500, Source::ClosedForm);
        const auto b = scan(init, p, kAB, 15.0, 500, Source::Oracle);
        for (std::size_t i = 0; i < a.values.size(); ++i) CHECK(std::abs(a.values[i] - b.values[i]) <= 1e-9);
    }
}

TEST_CASE("all-pair scan at t = 0") {
    const double a = 0.4;
    const auto all = scan_all_pairs(InitialState::psi(a), params(0.0, 1.0), 2.0, 5);
    REQUIRE(all.size() == 6);
    CHECK(std::abs(all[0].values[0] - std::abs(std::sin(2 * a))) <= 1e-12);
    for (std::size_t k = 1; k < 6; ++k) CHECK(all[k].values[0] <= 1e-12);
    const auto single = scan(InitialState::psi(a), params(0.0, 1.0), {Subsystem::ModeA, Subsystem::ModeB}, 2.0, 5,
                             Source::Oracle);
    for (std::size_t i = 0; i < 5; ++i) CHECK(all[1].values[i] == single.values[i]);
}
