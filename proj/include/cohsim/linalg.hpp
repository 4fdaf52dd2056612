#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace cohsim {

struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dense real symmetric matrix. set() writes both mirror entries, so stored
/// data is symmetric by construction; the raw constructor verifies it.
class SymmetricMatrix {
public:
    explicit SymmetricMatrix(std::size_t n);
    SymmetricMatrix(std::size_t n, std::vector<double> entries);

    std::size_t size() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }

    void set(std::size_t i, std::size_t j, double v) {
        e_[i * n_ + j] = v;
        e_[j * n_ + i] = v;
    }

    const std::vector<double>& entries() const { return e_; }

    double frobenius_norm() const;
    double trace() const;

private:
    std::size_t n_;
    std::vector<double> e_;
};

/// mu sorted ascending; row k of `vectors` is the unit eigenvector for mu[k],
/// with its largest-magnitude component made non-negative.
struct EigenDecomposition {
    std::vector<double> mu;
    std::vector<double> vectors;  // row-major n*n

    std::size_t size() const { return mu.size(); }
    double vec(std::size_t k, std::size_t i) const { return vectors[k * mu.size() + i]; }
};

/// Cyclic-by-rows Jacobi diagonalization of a real symmetric matrix.
///
/// Iterates plane rotations until the off-diagonal Frobenius norm drops below
/// 1e-12 * ||m||_F (at most 100 sweeps, else NonConvergence). The result
/// satisfies m = sum_k mu[k] * r_k (x) r_k with orthonormal rows r_k; for
/// eigenvalues that coincide within rounding, any orthonormal basis of the
/// shared eigenspace may be returned.
EigenDecomposition jacobi_eigh(const SymmetricMatrix& m);

/// sum_k mu[k] * r_k (x) r_k, the inverse of jacobi_eigh up to rounding.
SymmetricMatrix reconstruct(const EigenDecomposition& d);

}  // namespace cohsim
