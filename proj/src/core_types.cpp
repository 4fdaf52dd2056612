#include "cohsim/core_types.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace cohsim {

namespace {

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) {
        throw std::invalid_argument(std::string(what) + " must be finite");
    }
}

}  // namespace

ModeSystem::ModeSystem(std::vector<double> omega, std::vector<double> lambda)
    : omega_(std::move(omega)), lambda_(std::move(lambda)) {
    const std::size_t n = omega_.size();
    if (n == 0) {
        throw std::invalid_argument("ModeSystem needs at least one mode");
    }
    if (lambda_.size() != n * n) {
        throw std::invalid_argument("coupling matrix must be n x n");
    }
    for (double w : omega_) {
        require_finite(w, "omega");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (lambda_[i * n + i] != 0.0) {
            throw std::invalid_argument("coupling diagonal must be zero");
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            require_finite(lambda_[i * n + j], "lambda");
            if (lambda_[i * n + j] != lambda_[j * n + i]) {
                throw std::invalid_argument("coupling matrix must be symmetric");
            }
        }
    }
}

ModeSystem ModeSystem::uncoupled(std::vector<double> omega) {
    const std::size_t n = omega.size();
    return ModeSystem(std::move(omega), std::vector<double>(n * n, 0.0));
}

ModeSystem ModeSystem::from_couplings(std::vector<double> omega,
                                      const std::vector<Coupling>& couplings) {
    const std::size_t n = omega.size();
    std::vector<double> lambda(n * n, 0.0);
    std::vector<bool> seen(n * n, false);
    for (const auto& c : couplings) {
        if (c.i >= n || c.j >= n) {
            throw std::invalid_argument("coupling index out of range");
        }
        if (c.i == c.j) {
            throw std::invalid_argument("coupling diagonal must be zero");
        }
        if (seen[c.i * n + c.j]) {
            throw std::invalid_argument("duplicate coupling entry");
        }
        seen[c.i * n + c.j] = seen[c.j * n + c.i] = true;
        lambda[c.i * n + c.j] = c.value;
        lambda[c.j * n + c.i] = c.value;
    }
    return ModeSystem(std::move(omega), std::move(lambda));
}

Amplitude coherent_overlap(Amplitude a, Amplitude b) {
    if (a == b) {
        return Amplitude(1.0, 0.0);  // exact, avoids exp round-off at coincidence
    }
    const Amplitude exponent =
        -0.5 * std::norm(a) - 0.5 * std::norm(b) + std::conj(b) * a;
    return std::exp(exponent);
}

DisplacementProduct compose_displacements(Amplitude e1, Amplitude e2) {
    const Amplitude exponent = 0.5 * (e1 * std::conj(e2) - std::conj(e1) * e2);
    return DisplacementProduct{e1 + e2, std::exp(exponent)};
}

double total_photon_number(const AmplitudeVector& amps) {
    double total = 0.0;
    for (const Amplitude& a : amps) {
        total += std::norm(a);
    }
    return total;
}

}  // namespace cohsim
