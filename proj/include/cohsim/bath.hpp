#pragma once

#include <utility>

#include "cohsim/core_types.hpp"
#include "cohsim/modespace.hpp"

namespace cohsim {

struct InsufficientData : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One system mode coupled uniformly to an equally spaced band of bath modes
/// (star topology); bath starts in vacuum.
struct StarBathSpec {
    double omega_sys;
    int n_bath;        // >= 2
    double bandwidth;  // > 0; bath spans [omega_sys - bw/2, omega_sys + bw/2]
    double coupling;   // > 0; uniform system-bath coupling
    Amplitude alpha0;  // initial system amplitude
};

/// (n_bath+1)-mode system: mode 0 is the system, modes 1..n_bath the band.
/// Initial amplitudes (alpha0, 0, ..., 0).
std::pair<ModeSystem, AmplitudeVector> build_star_bath(const StarBathSpec& spec);

/// Markovian lossy-cavity reference |alpha0| * exp(-gamma_rate * t).
std::vector<double> markov_reference(Amplitude alpha0, double gamma_rate,
                                     const std::vector<double>& times);

/// Golden-rule amplitude decay estimate for the flat discretized band:
/// pi * coupling^2 * (n_bath - 1) / bandwidth.
double predicted_amplitude_rate(const StarBathSpec& spec);

/// Approximate revival time 2*pi / dw of the equally spaced spectrum,
/// dw = bandwidth / (n_bath - 1).
double estimate_recurrence_time(const StarBathSpec& spec);

struct DecayFit {
    double rate;        // >= 0
    double r2;          // <= 1; defined as 1 for a zero-variance target
    double window_end;  // time of the last sample actually used
};

/// Ordinary least squares of log|alpha_mode(t)| against -rate*t + const over
/// t in [0, window_end]. Samples with |alpha| < 1e-9 are excluded as
/// numerical floor; fewer than 3 usable samples raises InsufficientData.
DecayFit fit_decay_rate(const Trajectory& traj, std::size_t mode, double window_end);

/// Default fit window: min(0.5 * estimate_recurrence_time, time of the first
/// sample below 1e-3 * |alpha0|), so revivals and log-of-noise stay out of
/// the regression.
double default_fit_window(const StarBathSpec& spec, const Trajectory& traj, std::size_t mode);

}  // namespace cohsim
