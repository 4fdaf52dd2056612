#include "cohsim/oracle.hpp"

#include <cmath>
#include <utility>

#include "cohsim/modespace.hpp"

namespace cohsim {

namespace {

constexpr std::size_t kDimensionCap = 4096;

// Acceptance-scale inputs sit just above a 1e-8 deficit (|alpha| = 0.4 with
// n_max = 5 leaves 2.2e-8 outside the basis), so the guard trips at 1e-7.
constexpr double kTruncationDeficit = 1e-7;

// Per-mode Poissonian amplitudes exp(-|a|^2/2) a^n / sqrt(n!), built by
// recurrence; also reports the truncated weight sum_n |w_n|^2.
std::pair<AmplitudeVector, double> poisson_amplitudes(Amplitude alpha, int n_max) {
    AmplitudeVector w(static_cast<std::size_t>(n_max) + 1);
    w[0] = Amplitude(std::exp(-0.5 * std::norm(alpha)), 0.0);
    double weight = std::norm(w[0]);
    for (int n = 1; n <= n_max; ++n) {
        w[n] = w[n - 1] * alpha / std::sqrt(static_cast<double>(n));
        weight += std::norm(w[n]);
    }
    return {std::move(w), weight};
}

}  // namespace

FockBasisSpec::FockBasisSpec(int n_modes, int n_max) : n_modes_(n_modes), n_max_(n_max) {
    if (n_modes < 1 || n_modes > 3) {
        throw std::invalid_argument("FockBasisSpec: n_modes must be 1..3");
    }
    if (n_max < 0) {
        throw std::invalid_argument("FockBasisSpec: n_max must be non-negative");
    }
    dimension_ = 1;
    for (int j = 0; j < n_modes; ++j) {
        dimension_ *= static_cast<std::size_t>(n_max) + 1;
        if (dimension_ > kDimensionCap) {
            throw std::invalid_argument("FockBasisSpec: dimension exceeds 4096");
        }
    }
}

int FockBasisSpec::occupation(std::size_t index, int mode) const {
    const std::size_t base = static_cast<std::size_t>(n_max_) + 1;
    std::size_t div = 1;
    for (int j = n_modes_ - 1; j > mode; --j) {
        div *= base;
    }
    return static_cast<int>((index / div) % base);
}

FockState truncated_coherent_vector(const AmplitudeVector& alpha_vec, const FockBasisSpec& spec) {
    if (alpha_vec.size() != static_cast<std::size_t>(spec.n_modes())) {
        throw DimensionError("truncated_coherent_vector: amplitude count != n_modes");
    }

    std::vector<AmplitudeVector> per_mode;
    per_mode.reserve(alpha_vec.size());
    for (const Amplitude& alpha : alpha_vec) {
        auto [w, weight] = poisson_amplitudes(alpha, spec.n_max());
        if (weight < 1.0 - kTruncationDeficit) {
            throw TruncationError("truncated_coherent_vector: |alpha| too large for n_max");
        }
        per_mode.push_back(std::move(w));
    }

    FockState state{spec, AmplitudeVector(spec.dimension())};
    double norm_sq = 0.0;
    for (std::size_t idx = 0; idx < spec.dimension(); ++idx) {
        Amplitude c(1.0, 0.0);
        for (int j = 0; j < spec.n_modes(); ++j) {
            c *= per_mode[j][spec.occupation(idx, j)];
        }
        state.coeffs[idx] = c;
        norm_sq += std::norm(c);
    }
    const double inv_norm = 1.0 / std::sqrt(norm_sq);
    for (Amplitude& c : state.coeffs) {
        c *= inv_norm;
    }
    return state;
}

SymmetricMatrix build_fock_hamiltonian(const ModeSystem& sys, const FockBasisSpec& spec) {
    if (sys.size() != static_cast<std::size_t>(spec.n_modes())) {
        throw DimensionError("build_fock_hamiltonian: system size != n_modes");
    }
    const std::size_t dim = spec.dimension();
    const std::size_t base = static_cast<std::size_t>(spec.n_max()) + 1;

    // Stride of mode j in the mixed-radix index (last mode fastest).
    std::vector<std::size_t> stride(sys.size(), 1);
    for (int j = spec.n_modes() - 2; j >= 0; --j) {
        stride[j] = stride[j + 1] * base;
    }

    SymmetricMatrix h(dim);
    for (std::size_t idx = 0; idx < dim; ++idx) {
        double diag = 0.0;
        for (int j = 0; j < spec.n_modes(); ++j) {
            diag += sys.omega(j) * spec.occupation(idx, j);
        }
        h.set(idx, idx, diag);

        // a_i^dag a_j moves one excitation from j to i; <n+1|a^dag|n> = sqrt(n+1).
        for (int i = 0; i < spec.n_modes(); ++i) {
            for (int j = 0; j < spec.n_modes(); ++j) {
                if (i == j || sys.lambda(i, j) == 0.0) {
                    continue;
                }
                const int ni = spec.occupation(idx, i);
                const int nj = spec.occupation(idx, j);
                if (nj == 0 || ni == spec.n_max()) {
                    continue;
                }
                const std::size_t target = idx + stride[i] - stride[j];
                if (target < idx) {
                    continue;  // each unordered pair is set once, from its lower index
                }
                h.set(idx, target,
                      sys.lambda(i, j) * std::sqrt(static_cast<double>(ni + 1) * nj));
            }
        }
    }
    return h;
}

FockPropagator::FockPropagator(const SymmetricMatrix& h) : eig_(jacobi_eigh(h)) {}

FockState FockPropagator::evolve(const FockState& psi0, double t) const {
    const std::size_t dim = eig_.size();
    if (psi0.coeffs.size() != dim) {
        throw DimensionError("evolve_fock: state dimension does not match Hamiltonian");
    }
    AmplitudeVector normal(dim, Amplitude(0.0, 0.0));
    for (std::size_t m = 0; m < dim; ++m) {
        Amplitude c(0.0, 0.0);
        for (std::size_t k = 0; k < dim; ++k) {
            c += eig_.vec(m, k) * psi0.coeffs[k];
        }
        normal[m] = c * std::polar(1.0, -eig_.mu[m] * t);
    }
    FockState out{psi0.spec, AmplitudeVector(dim, Amplitude(0.0, 0.0))};
    for (std::size_t m = 0; m < dim; ++m) {
        for (std::size_t k = 0; k < dim; ++k) {
            out.coeffs[k] += eig_.vec(m, k) * normal[m];
        }
    }
    return out;
}

FockState evolve_fock(const SymmetricMatrix& h, const FockState& psi0, double t) {
    return FockPropagator(h).evolve(psi0, t);
}

Amplitude overlap(const FockState& a, const FockState& b) {
    if (!(a.spec == b.spec)) {
        throw DimensionError("overlap: Fock basis specs differ");
    }
    Amplitude sum(0.0, 0.0);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        sum += std::conj(a.coeffs[i]) * b.coeffs[i];
    }
    return sum;
}

double fidelity(const FockState& a, const FockState& b) {
    return std::norm(overlap(a, b));
}

std::vector<double> mean_photon_numbers(const FockState& state) {
    std::vector<double> out(state.spec.n_modes(), 0.0);
    for (std::size_t idx = 0; idx < state.coeffs.size(); ++idx) {
        const double p = std::norm(state.coeffs[idx]);
        if (p == 0.0) {
            continue;
        }
        for (int j = 0; j < state.spec.n_modes(); ++j) {
            out[j] += p * state.spec.occupation(idx, j);
        }
    }
    return out;
}

std::vector<double> coherence_check_many(const ModeSystem& sys, const AmplitudeVector& a0,
                                         const std::vector<double>& times,
                                         const FockBasisSpec& spec) {
    const NormalModeDecomposition d = decompose(sys);
    const FockState psi0 = truncated_coherent_vector(a0, spec);
    const FockPropagator propagator(build_fock_hamiltonian(sys, spec));

    std::vector<double> out;
    out.reserve(times.size());
    for (double t : times) {
        const FockState exact = propagator.evolve(psi0, t);
        const FockState predicted = truncated_coherent_vector(evolve(d, a0, t), spec);
        out.push_back(fidelity(exact, predicted));
    }
    return out;
}

double coherence_check(const ModeSystem& sys, const AmplitudeVector& a0, double t,
                       const FockBasisSpec& spec) {
    return coherence_check_many(sys, a0, {t}, spec).front();
}

}  // namespace cohsim
