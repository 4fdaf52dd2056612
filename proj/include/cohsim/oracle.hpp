#pragma once

#include "cohsim/core_types.hpp"
#include "cohsim/linalg.hpp"

namespace cohsim {

struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Truncated multi-mode number basis: per mode the states |0>..|n_max>,
/// full dimension (n_max+1)^n_modes. Desk-scale caps: n_modes <= 3 and
/// dimension <= 4096.
class FockBasisSpec {
public:
    FockBasisSpec(int n_modes, int n_max);

    int n_modes() const { return n_modes_; }
    int n_max() const { return n_max_; }
    std::size_t dimension() const { return dimension_; }

    /// Occupation of mode `mode` in the basis state `index` (mixed radix,
    /// last mode fastest).
    int occupation(std::size_t index, int mode) const;

    bool operator==(const FockBasisSpec& other) const {
        return n_modes_ == other.n_modes_ && n_max_ == other.n_max_;
    }

private:
    int n_modes_;
    int n_max_;
    std::size_t dimension_;
};

/// State vector over the truncated number basis.
struct FockState {
    FockBasisSpec spec;
    AmplitudeVector coeffs;  // length spec.dimension()
};

/// Coherent product state from the per-mode Poissonian expansion
/// coeff(n_1..n_k) = prod_j exp(-|a_j|^2/2) a_j^{n_j} / sqrt(n_j!),
/// renormalized to unit norm after truncation. Throws TruncationError when a
/// mode's truncated weight falls below 1 - 1e-7 (|alpha| too large for n_max).
FockState truncated_coherent_vector(const AmplitudeVector& alpha_vec, const FockBasisSpec& spec);

/// Number-conserving Hamiltonian in the truncated basis: diagonal
/// sum_j omega_j n_j, off-diagonal lambda_ij sqrt((n_i+1) n_j) between states
/// that differ by one excitation moved from mode j to mode i. Real symmetric.
SymmetricMatrix build_fock_hamiltonian(const ModeSystem& sys, const FockBasisSpec& spec);

/// exp(-iHt) applied through the eigendecomposition of H, reusable across
/// time points.
class FockPropagator {
public:
    explicit FockPropagator(const SymmetricMatrix& h);

    FockState evolve(const FockState& psi0, double t) const;

private:
    EigenDecomposition eig_;
};

/// One-shot exact propagation e^{-iHt} psi0. Unitary within rounding.
FockState evolve_fock(const SymmetricMatrix& h, const FockState& psi0, double t);

/// Inner product <a|b> over the truncated basis.
Amplitude overlap(const FockState& a, const FockState& b);

/// |<a|b>|^2. Throws DimensionError when the specs differ.
double fidelity(const FockState& a, const FockState& b);

/// Per-mode mean photon numbers <n_j> of a Fock state.
std::vector<double> mean_photon_numbers(const FockState& state);

/// The headline experiment: fidelity between the numerically exact evolved
/// state and the coherent product predicted by the closed-form amplitude
/// evolution, at each requested time.
std::vector<double> coherence_check_many(const ModeSystem& sys, const AmplitudeVector& a0,
                                         const std::vector<double>& times,
                                         const FockBasisSpec& spec);

double coherence_check(const ModeSystem& sys, const AmplitudeVector& a0, double t,
                       const FockBasisSpec& spec);

}  // namespace cohsim
