#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace cohsim {

using Amplitude = std::complex<double>;
using AmplitudeVector = std::vector<Amplitude>;

struct DimensionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// n coupled bosonic modes: angular frequencies omega_j plus a real symmetric
/// coupling matrix lambda_ij with zero diagonal. Immutable after construction.
class ModeSystem {
public:
    struct Coupling {
        std::size_t i;
        std::size_t j;
        double value;
    };

    /// `lambda` is row-major n*n and must be exactly symmetric, zero on the
    /// diagonal, and finite. Throws std::invalid_argument otherwise.
    ModeSystem(std::vector<double> omega, std::vector<double> lambda);

    static ModeSystem uncoupled(std::vector<double> omega);

    /// Sparse construction from (i, j, value) triples; indices 0-based,
    /// i != j, each unordered pair given at most once.
    static ModeSystem from_couplings(std::vector<double> omega,
                                     const std::vector<Coupling>& couplings);

    std::size_t size() const { return omega_.size(); }
    double omega(std::size_t i) const { return omega_[i]; }
    const std::vector<double>& omegas() const { return omega_; }
    double lambda(std::size_t i, std::size_t j) const { return lambda_[i * size() + j]; }

private:
    std::vector<double> omega_;
    std::vector<double> lambda_;  // row-major n*n
};

/// D(e1) D(e2) = D(sum) * phase with |phase| == 1.
struct DisplacementProduct {
    Amplitude sum;
    Amplitude phase;
};

/// Overlap <b|a> = exp(-|a|^2/2 - |b|^2/2 + conj(b)*a).
/// |result| <= 1 with equality iff a == b.
Amplitude coherent_overlap(Amplitude a, Amplitude b);

/// Displacement composition: sum = e1 + e2,
/// phase = exp((e1*conj(e2) - conj(e1)*e2) / 2).
DisplacementProduct compose_displacements(Amplitude e1, Amplitude e2);

/// Total mean photon number sum_j |alpha_j|^2.
double total_photon_number(const AmplitudeVector& amps);

}  // namespace cohsim
