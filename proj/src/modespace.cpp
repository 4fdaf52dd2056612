#include "cohsim/modespace.hpp"

#include <cmath>
#include <utility>

namespace cohsim {

namespace {

Amplitude phase_factor(double mu, double t) {
    return std::polar(1.0, -mu * t);
}

}  // namespace

TwoModeCoefficients two_mode_coefficients(double Delta, double lam) {
    if (lam < 0.0) {
        throw std::invalid_argument("two_mode_coefficients requires lam >= 0");
    }
    const double Omega = std::hypot(Delta, 2.0 * lam);
    if (Omega == 0.0) {
        return TwoModeCoefficients{1.0, 0.0, 0.0, 0.0, 0.0};
    }
    // Scale-free variables r = 2 lam / Omega, d = Delta / Omega (r^2 + d^2 = 1)
    // keep the evaluation overflow-free and cancellation-free on the branch
    // where Omega -/+ Delta would lose digits.
    const double r = 2.0 * lam / Omega;
    const double d = Delta / Omega;
    double delta;
    double gamma_c;
    if (Delta >= 0.0) {
        delta = std::sqrt(0.5 * (1.0 + d));
        gamma_c = r / std::sqrt(2.0 * (1.0 + d));
    } else {
        delta = r / std::sqrt(2.0 * (1.0 - d));
        gamma_c = std::sqrt(0.5 * (1.0 - d));
    }
    return TwoModeCoefficients{delta, gamma_c, Omega, 0.5 * (Delta + Omega), 0.5 * (Delta - Omega)};
}

std::pair<Amplitude, Amplitude> evolve_two_mode(Amplitude alpha, Amplitude beta,
                                                double Delta, double lam, double t) {
    if (lam < 0.0) {
        auto [out1, out2] = evolve_two_mode(alpha, -beta, Delta, -lam, t);
        return {out1, -out2};
    }
    const TwoModeCoefficients c = two_mode_coefficients(Delta, lam);
    const Amplitude normal1 = (alpha * c.delta + beta * c.gamma_c) * phase_factor(c.mu1, t);
    const Amplitude normal2 = (alpha * c.gamma_c - beta * c.delta) * phase_factor(c.mu2, t);
    return {c.delta * normal1 + c.gamma_c * normal2, c.gamma_c * normal1 - c.delta * normal2};
}

SymmetricMatrix build_coupling_matrix(const ModeSystem& sys) {
    const std::size_t n = sys.size();
    SymmetricMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        m.set(i, i, sys.omega(i));
        for (std::size_t j = i + 1; j < n; ++j) {
            m.set(i, j, sys.lambda(i, j));
        }
    }
    return m;
}

NormalModeDecomposition decompose(const ModeSystem& sys) {
    EigenDecomposition eig = jacobi_eigh(build_coupling_matrix(sys));
    return NormalModeDecomposition{sys, std::move(eig)};
}

AmplitudeVector evolve(const NormalModeDecomposition& d, const AmplitudeVector& a0, double t) {
    const std::size_t n = d.system.size();
    if (a0.size() != n) {
        throw DimensionError("evolve: amplitude vector does not match system size");
    }
    // Normal amplitudes c_m = r_m . a0, rotated by exp(-i mu_m t).
    AmplitudeVector normal(n, Amplitude(0.0, 0.0));
    for (std::size_t m = 0; m < n; ++m) {
        Amplitude c(0.0, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            c += d.eig.vec(m, j) * a0[j];
        }
        normal[m] = c * phase_factor(d.eig.mu[m], t);
    }
    AmplitudeVector out(n, Amplitude(0.0, 0.0));
    for (std::size_t m = 0; m < n; ++m) {
        for (std::size_t k = 0; k < n; ++k) {
            out[k] += d.eig.vec(m, k) * normal[m];
        }
    }
    return out;
}

Trajectory make_trajectory(std::vector<double> times, std::vector<AmplitudeVector> states) {
    if (times.empty()) {
        throw EmptyGrid("trajectory: empty time grid");
    }
    if (states.size() != times.size()) {
        throw DimensionError("trajectory: one state per time point required");
    }
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!std::isfinite(times[i])) {
            throw std::invalid_argument("trajectory: time points must be finite");
        }
        if (i > 0 && !(times[i] > times[i - 1])) {
            throw std::invalid_argument("trajectory: time points must be strictly increasing");
        }
    }
    Trajectory traj;
    traj.times = std::move(times);
    traj.states = std::move(states);
    traj.photon_numbers.reserve(traj.states.size());
    for (const AmplitudeVector& state : traj.states) {
        std::vector<double> occ(state.size());
        for (std::size_t j = 0; j < state.size(); ++j) {
            occ[j] = std::norm(state[j]);
        }
        traj.photon_numbers.push_back(std::move(occ));
    }
    return traj;
}

Trajectory trajectory(const NormalModeDecomposition& d, const AmplitudeVector& a0,
                      std::vector<double> times) {
    if (times.empty()) {
        throw EmptyGrid("trajectory: empty time grid");
    }
    std::vector<AmplitudeVector> states;
    states.reserve(times.size());
    for (double t : times) {
        states.push_back(evolve(d, a0, t));
    }
    return make_trajectory(std::move(times), std::move(states));
}

}  // namespace cohsim
