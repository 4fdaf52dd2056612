#pragma once

#include <utility>

#include "cohsim/core_types.hpp"
#include "cohsim/linalg.hpp"

namespace cohsim {

struct EmptyGrid : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Two-mode normal-mode transformation for detuning Delta and coupling
/// lam >= 0. gamma_c is the transformation partner of delta (named to avoid
/// the decay-rate gamma). delta^2 + gamma_c^2 == 1.
struct TwoModeCoefficients {
    double delta;
    double gamma_c;
    double Omega;  // Rabi splitting sqrt(Delta^2 + 4 lam^2)
    double mu1;    // (Delta + Omega) / 2
    double mu2;    // (Delta - Omega) / 2
};

/// Requires lam >= 0. The degenerate point Delta == 0, lam == 0 returns
/// delta = 1, gamma_c = 0 (the lam -> 0+ limit of the Delta > 0 branch,
/// adopted as convention); everywhere else the closed forms are evaluated
/// with cancellation-free algebra.
TwoModeCoefficients two_mode_coefficients(double Delta, double lam);

/// Closed-form two-mode evolution of coherent amplitudes (alpha, beta) under
/// detuning Delta and coupling lam for time t. Negative lam is handled via
/// the (lam, beta, out2) -> (-lam, -beta, -out2) sign equivalence.
/// |out1|^2 + |out2|^2 == |alpha|^2 + |beta|^2.
std::pair<Amplitude, Amplitude> evolve_two_mode(Amplitude alpha, Amplitude beta,
                                                double Delta, double lam, double t);

/// Single-particle matrix: omega_i on the diagonal, lambda_ij off it.
SymmetricMatrix build_coupling_matrix(const ModeSystem& sys);

struct NormalModeDecomposition {
    ModeSystem system;
    EigenDecomposition eig;
};

/// Eigendecomposition of build_coupling_matrix(sys). Propagates NonConvergence.
NormalModeDecomposition decompose(const ModeSystem& sys);

/// Exact amplitude evolution: project onto normal modes, rotate each by
/// exp(-i mu_m t), project back. Norm-preserving. Throws DimensionError if
/// a0 does not match the system size.
AmplitudeVector evolve(const NormalModeDecomposition& d, const AmplitudeVector& a0, double t);

struct Trajectory {
    std::vector<double> times;
    std::vector<AmplitudeVector> states;
    std::vector<std::vector<double>> photon_numbers;  // |alpha_j(t)|^2 per mode
};

/// Bundles precomputed states into a Trajectory (validates grid, fills
/// photon numbers). Times must be strictly increasing and finite.
Trajectory make_trajectory(std::vector<double> times, std::vector<AmplitudeVector> states);

/// Samples evolve() on the given grid. Throws EmptyGrid on an empty grid.
Trajectory trajectory(const NormalModeDecomposition& d, const AmplitudeVector& a0,
                      std::vector<double> times);

}  // namespace cohsim
