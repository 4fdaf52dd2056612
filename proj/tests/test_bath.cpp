#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cohsim/bath.hpp"

using namespace cohsim;

namespace {

std::vector<double> linspace(double lo, double hi, std::size_t count) {
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    out.back() = hi;
    return out;
}

Trajectory single_mode_trajectory(const std::vector<double>& times,
                                  const std::vector<double>& magnitudes) {
    std::vector<AmplitudeVector> states;
    states.reserve(times.size());
    for (double m : magnitudes) {
        states.push_back({Amplitude(m, 0.0)});
    }
    return make_trajectory(times, std::move(states));
}

Trajectory simulate(const StarBathSpec& spec, const std::vector<double>& times) {
    const auto [sys, a0] = build_star_bath(spec);
    return trajectory(decompose(sys), a0, times);
}

// Coupling that pins the golden-rule amplitude rate for a given bath size.
double coupling_for_rate(double rate, int n_bath, double bandwidth) {
    return std::sqrt(rate * bandwidth / (std::numbers::pi * (n_bath - 1)));
}

}  // namespace

TEST_CASE("build_star_bath endpoints, topology, vacuum bath") {
    const StarBathSpec spec{5.0, 2, 1.0, 0.1, Amplitude(0.8, 0.0)};
    const auto [sys, a0] = build_star_bath(spec);
    CHECK(sys.size() == 3);
    CHECK(sys.omega(0) == 5.0);
    CHECK(sys.omega(1) == doctest::Approx(4.5).epsilon(1e-15));
    CHECK(sys.omega(2) == doctest::Approx(5.5).epsilon(1e-15));
    CHECK(sys.lambda(0, 1) == 0.1);
    CHECK(sys.lambda(0, 2) == 0.1);
    CHECK(sys.lambda(1, 2) == 0.0);
    CHECK(a0[0] == Amplitude(0.8, 0.0));
    CHECK(a0[1] == Amplitude(0.0, 0.0));
    CHECK(a0[2] == Amplitude(0.0, 0.0));

    CHECK_THROWS_AS(build_star_bath(StarBathSpec{5.0, 1, 1.0, 0.1, Amplitude(0, 0)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_star_bath(StarBathSpec{5.0, 4, -1.0, 0.1, Amplitude(0, 0)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_star_bath(StarBathSpec{5.0, 4, 1.0, -0.1, Amplitude(0, 0)}),
                    std::invalid_argument);
}

TEST_CASE("markov_reference curve") {
    const std::vector<double> times = {0.0, 1.0, 2.0};
    {
        const std::vector<double> ref = markov_reference(Amplitude(0.7, 0.0), 0.0, times);
        for (double v : ref) {
            CHECK(v == 0.7);
        }
    }
    {
        const std::vector<double> ref = markov_reference(Amplitude(1.0, 0.0), 1.0, times);
        CHECK(ref[1] == doctest::Approx(0.36787944117144233).epsilon(1e-14));
    }
    {
        const std::vector<double> ref = markov_reference(Amplitude(0.0, 2.0), 0.5, times);
        CHECK(ref[2] == doctest::Approx(0.73575888234288467).epsilon(1e-14));
    }
    CHECK_THROWS_AS(markov_reference(Amplitude(1.0, 0.0), -0.5, times), std::invalid_argument);
}

TEST_CASE("predicted_amplitude_rate formula") {
    CHECK(predicted_amplitude_rate(StarBathSpec{1.0, 51, 2.0, 0.0, Amplitude(1, 0)}) == 0.0);

    const StarBathSpec base{1.0, 201, 2.0, 0.01, Amplitude(1.0, 0.0)};
    CHECK(predicted_amplitude_rate(base) ==
          doctest::Approx(0.031415926535897931).epsilon(1e-14));

    // doubling the mode density doubles the rate
    const StarBathSpec dense{1.0, 401, 2.0, 0.01, Amplitude(1.0, 0.0)};
    CHECK(predicted_amplitude_rate(dense) ==
          doctest::Approx(2.0 * predicted_amplitude_rate(base)).epsilon(1e-13));
}

TEST_CASE("estimate_recurrence_time") {
    const StarBathSpec spec{1.0, 201, 2.0, 0.01, Amplitude(1.0, 0.0)};
    CHECK(estimate_recurrence_time(spec) == doctest::Approx(628.31853071795865).epsilon(1e-14));

    const StarBathSpec narrow{1.0, 201, 1.0, 0.01, Amplitude(1.0, 0.0)};
    CHECK(estimate_recurrence_time(narrow) ==
          doctest::Approx(2.0 * estimate_recurrence_time(spec)).epsilon(1e-13));
}

TEST_CASE("fit_decay_rate: exact exponential") {
    const std::vector<double> times = linspace(0.0, 10.0, 60);
    std::vector<double> mags(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        mags[i] = std::exp(-0.3 * times[i]);
    }
    const DecayFit fit = fit_decay_rate(single_mode_trajectory(times, mags), 0, 10.0);
    CHECK(fit.rate == doctest::Approx(0.3).epsilon(1e-9));
    CHECK(fit.r2 >= 1.0 - 1e-9);
    CHECK(fit.r2 <= 1.0);
    CHECK(fit.window_end == 10.0);
}

TEST_CASE("fit_decay_rate: constant input is the degenerate regression") {
    const std::vector<double> times = linspace(0.0, 5.0, 20);
    const DecayFit fit =
        fit_decay_rate(single_mode_trajectory(times, std::vector<double>(20, 0.42)), 0, 5.0);
    CHECK(fit.rate == 0.0);
    CHECK(fit.r2 == 1.0);
}

TEST_CASE("fit_decay_rate: window and floor exclusions") {
    // slope changes at t=5; restricting the window isolates the early rate
    const std::vector<double> times = linspace(0.0, 10.0, 101);
    std::vector<double> mags(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double t = times[i];
        mags[i] = (t <= 5.0) ? std::exp(-0.2 * t) : std::exp(-1.0 - 2.0 * (t - 5.0));
    }
    const DecayFit fit = fit_decay_rate(single_mode_trajectory(times, mags), 0, 5.0);
    CHECK(fit.rate == doctest::Approx(0.2).epsilon(1e-9));
    CHECK(fit.window_end == 5.0);

    // samples at the numerical floor are dropped
    const std::vector<double> floor_times = {0.0, 1.0, 2.0, 3.0};
    const std::vector<double> floor_mags = {1.0, 0.5, 0.25, 1e-12};
    const DecayFit floored =
        fit_decay_rate(single_mode_trajectory(floor_times, floor_mags), 0, 3.0);
    CHECK(floored.window_end == 2.0);
    CHECK(floored.rate == doctest::Approx(std::log(2.0)).epsilon(1e-9));

    CHECK_THROWS_AS(
        fit_decay_rate(single_mode_trajectory({0.0, 1.0, 2.0}, {1.0, 0.5, 1e-12}), 0, 2.0),
        InsufficientData);
    CHECK_THROWS_AS(fit_decay_rate(single_mode_trajectory({0.0, 1.0}, {1.0, 0.5}), 0, 1.0),
                    InsufficientData);
}

TEST_CASE("default_fit_window caps at the amplitude cutoff") {
    const StarBathSpec spec{1.0, 201, 2.0, 0.01, Amplitude(1.0, 0.0)};  // 0.5 T_rec = 314.16
    {
        const std::vector<double> times = {0.0, 10.0, 20.0};
        const std::vector<double> mags = {1.0, 0.5, 1e-4};  // below 1e-3 at t=20
        CHECK(default_fit_window(spec, single_mode_trajectory(times, mags), 0) == 20.0);
    }
    {
        const std::vector<double> times = {0.0, 10.0, 20.0};
        const std::vector<double> mags = {1.0, 0.9, 0.8};
        CHECK(default_fit_window(spec, single_mode_trajectory(times, mags), 0) ==
              doctest::Approx(0.5 * estimate_recurrence_time(spec)).epsilon(1e-15));
    }
}

TEST_CASE("vacuum input stays exactly at vacuum") {
    const StarBathSpec spec{1.0, 21, 2.0, 0.05, Amplitude(0.0, 0.0)};
    const Trajectory traj = simulate(spec, linspace(0.0, 10.0, 40));
    for (const AmplitudeVector& state : traj.states) {
        for (const Amplitude& a : state) {
            CHECK(a == Amplitude(0.0, 0.0));
        }
    }
}

TEST_CASE("star-bath decay matches the golden-rule estimate") {
    // rate * (n_bath-1)/bandwidth = 4 level spacings inside the linewidth,
    // comfortably in the flat-band regime
    const double target_rate = 0.08;
    const StarBathSpec spec{1.0, 101, 2.0, coupling_for_rate(target_rate, 101, 2.0),
                            Amplitude(1.0, 0.0)};
    const double window = 0.5 * estimate_recurrence_time(spec);
    const Trajectory traj = simulate(spec, linspace(0.0, window, 600));

    // photon number is conserved end to end
    const double n0 = total_photon_number(traj.states.front());
    for (const AmplitudeVector& state : traj.states) {
        CHECK(std::abs(total_photon_number(state) - n0) <= 1e-10 * (1.0 + n0));
    }

    // documented windowing: stop at the first sample below 1e-3*|alpha0|
    const DecayFit fit = fit_decay_rate(traj, 0, default_fit_window(spec, traj, 0));
    const double predicted = predicted_amplitude_rate(spec);
    CHECK(std::abs(fit.rate - predicted) <= 0.15 * predicted);
    CHECK(fit.r2 >= 0.99);
}

TEST_CASE("bath refinement keeps the rate and spreads the amplitude") {
    const double target_rate = 0.08;
    const StarBathSpec coarse{1.0, 101, 2.0, coupling_for_rate(target_rate, 101, 2.0),
                              Amplitude(1.0, 0.0)};
    const StarBathSpec fine{1.0, 201, 2.0, coupling_for_rate(target_rate, 201, 2.0),
                            Amplitude(1.0, 0.0)};

    // common window inside both half-recurrence times
    const double window = 100.0;
    const std::vector<double> times = linspace(0.0, window, 400);
    const Trajectory traj_coarse = simulate(coarse, times);
    const Trajectory traj_fine = simulate(fine, times);

    const double rate_coarse =
        fit_decay_rate(traj_coarse, 0, default_fit_window(coarse, traj_coarse, 0)).rate;
    const double rate_fine =
        fit_decay_rate(traj_fine, 0, default_fit_window(fine, traj_fine, 0)).rate;
    CHECK(std::abs(rate_fine - rate_coarse) <= 0.05 * rate_coarse);

    // recurrence moves out proportionally to the mode count
    CHECK(estimate_recurrence_time(fine) ==
          doctest::Approx(2.0 * estimate_recurrence_time(coarse)).epsilon(1e-12));

    // finite-n proxy for delta_k -> 0: the largest bath amplitude shrinks as n grows
    const auto max_bath_amplitude = [](const Trajectory& traj) {
        double worst = 0.0;
        const AmplitudeVector& last = traj.states.back();
        for (std::size_t j = 1; j < last.size(); ++j) {
            worst = std::max(worst, std::abs(last[j]));
        }
        return worst;
    };
    CHECK(max_bath_amplitude(traj_fine) < max_bath_amplitude(traj_coarse));
}
