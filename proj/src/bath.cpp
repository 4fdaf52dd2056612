#include "cohsim/bath.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace cohsim {

namespace {

constexpr double kAmplitudeFloor = 1e-9;

void validate(const StarBathSpec& spec) {
    if (spec.n_bath < 2) {
        throw std::invalid_argument("star bath needs n_bath >= 2");
    }
    if (!(spec.bandwidth > 0.0) || !std::isfinite(spec.bandwidth)) {
        throw std::invalid_argument("star bath bandwidth must be positive");
    }
    if (spec.coupling < 0.0 || !std::isfinite(spec.coupling)) {
        throw std::invalid_argument("star bath coupling must be non-negative");
    }
    if (!std::isfinite(spec.omega_sys) || !std::isfinite(spec.alpha0.real()) ||
        !std::isfinite(spec.alpha0.imag())) {
        throw std::invalid_argument("star bath parameters must be finite");
    }
}

}  // namespace

std::pair<ModeSystem, AmplitudeVector> build_star_bath(const StarBathSpec& spec) {
    validate(spec);
    const std::size_t n = static_cast<std::size_t>(spec.n_bath) + 1;
    const double dw = spec.bandwidth / (spec.n_bath - 1);

    std::vector<double> omega(n);
    omega[0] = spec.omega_sys;
    for (std::size_t j = 1; j < n; ++j) {
        omega[j] = spec.omega_sys - 0.5 * spec.bandwidth + static_cast<double>(j - 1) * dw;
    }

    std::vector<ModeSystem::Coupling> couplings;
    couplings.reserve(n - 1);
    for (std::size_t j = 1; j < n; ++j) {
        couplings.push_back({0, j, spec.coupling});
    }

    AmplitudeVector a0(n, Amplitude(0.0, 0.0));
    a0[0] = spec.alpha0;
    return {ModeSystem::from_couplings(std::move(omega), couplings), std::move(a0)};
}

std::vector<double> markov_reference(Amplitude alpha0, double gamma_rate,
                                     const std::vector<double>& times) {
    if (gamma_rate < 0.0) {
        throw std::invalid_argument("markov_reference requires gamma_rate >= 0");
    }
    std::vector<double> out(times.size());
    const double mag = std::abs(alpha0);
    for (std::size_t i = 0; i < times.size(); ++i) {
        out[i] = mag * std::exp(-gamma_rate * times[i]);
    }
    return out;
}

double predicted_amplitude_rate(const StarBathSpec& spec) {
    validate(spec);
    const double density = (spec.n_bath - 1) / spec.bandwidth;
    return std::numbers::pi * spec.coupling * spec.coupling * density;
}

double estimate_recurrence_time(const StarBathSpec& spec) {
    validate(spec);
    const double dw = spec.bandwidth / (spec.n_bath - 1);
    return 2.0 * std::numbers::pi / dw;
}

DecayFit fit_decay_rate(const Trajectory& traj, std::size_t mode, double window_end) {
    if (traj.times.empty()) {
        throw InsufficientData("fit_decay_rate: empty trajectory");
    }
    if (mode >= traj.states.front().size()) {
        throw DimensionError("fit_decay_rate: mode index out of range");
    }

    std::vector<double> ts;
    std::vector<double> logs;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        if (traj.times[i] > window_end) {
            break;
        }
        const double mag = std::abs(traj.states[i][mode]);
        if (mag < kAmplitudeFloor) {
            continue;
        }
        ts.push_back(traj.times[i]);
        logs.push_back(std::log(mag));
    }
    if (ts.size() < 3) {
        throw InsufficientData("fit_decay_rate: fewer than 3 usable samples in window");
    }

    const double n = static_cast<double>(ts.size());
    double t_mean = 0.0;
    double y_mean = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        t_mean += ts[i];
        y_mean += logs[i];
    }
    t_mean /= n;
    y_mean /= n;

    double stt = 0.0;
    double sty = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double dt = ts[i] - t_mean;
        const double dy = logs[i] - y_mean;
        stt += dt * dt;
        sty += dt * dy;
        syy += dy * dy;
    }
    if (stt == 0.0) {
        throw InsufficientData("fit_decay_rate: degenerate time grid");
    }

    // A constant target only accumulates rounding noise in syy; treat it as
    // the zero-variance case (rate 0, r2 1 by convention).
    const double eps = std::numeric_limits<double>::epsilon();
    if (syy <= 64.0 * n * eps * eps * (1.0 + y_mean * y_mean)) {
        return DecayFit{0.0, 1.0, ts.back()};
    }

    const double slope = sty / stt;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double resid = logs[i] - (y_mean + slope * (ts[i] - t_mean));
        ss_res += resid * resid;
    }
    const double r2 = 1.0 - ss_res / syy;
    return DecayFit{std::max(0.0, -slope), r2, ts.back()};
}

double default_fit_window(const StarBathSpec& spec, const Trajectory& traj, std::size_t mode) {
    validate(spec);
    if (traj.times.empty() || mode >= traj.states.front().size()) {
        throw DimensionError("default_fit_window: bad trajectory or mode index");
    }
    double window = 0.5 * estimate_recurrence_time(spec);
    const double cutoff = 1e-3 * std::abs(spec.alpha0);
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        if (std::abs(traj.states[i][mode]) < cutoff) {
            window = std::min(window, traj.times[i]);
            break;
        }
    }
    return window;
}

}  // namespace cohsim
