#include "cohsim/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

namespace cohsim {

namespace {

constexpr double kRelativeThreshold = 1e-12;
constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const std::vector<double>& a, std::size_t n) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            sum += 2.0 * a[i * n + j] * a[i * n + j];
        }
    }
    return std::sqrt(sum);
}

}  // namespace

SymmetricMatrix::SymmetricMatrix(std::size_t n) : n_(n), e_(n * n, 0.0) {
    if (n == 0) {
        throw std::invalid_argument("SymmetricMatrix dimension must be positive");
    }
}

SymmetricMatrix::SymmetricMatrix(std::size_t n, std::vector<double> entries)
    : n_(n), e_(std::move(entries)) {
    if (n == 0) {
        throw std::invalid_argument("SymmetricMatrix dimension must be positive");
    }
    if (e_.size() != n * n) {
        throw std::invalid_argument("SymmetricMatrix entries must be n x n");
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (e_[i * n + j] != e_[j * n + i]) {
                throw std::invalid_argument("SymmetricMatrix entries must be symmetric");
            }
        }
    }
}

double SymmetricMatrix::frobenius_norm() const {
    double sum = 0.0;
    for (double v : e_) {
        sum += v * v;
    }
    return std::sqrt(sum);
}

double SymmetricMatrix::trace() const {
    double sum = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
        sum += e_[i * n_ + i];
    }
    return sum;
}

EigenDecomposition jacobi_eigh(const SymmetricMatrix& m) {
    const std::size_t n = m.size();
    for (double v : m.entries()) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("jacobi_eigh: entries must be finite");
        }
    }
    std::vector<double> a = m.entries();  // working copy, diagonalized in place
    std::vector<double> v(n * n, 0.0);    // accumulated rotations, columns -> eigenvectors
    for (std::size_t i = 0; i < n; ++i) {
        v[i * n + i] = 1.0;
    }

    const double threshold = kRelativeThreshold * m.frobenius_norm();

    int sweep = 0;
    while (off_diagonal_norm(a, n) > threshold) {
        if (++sweep > kMaxSweeps) {
            throw NonConvergence("jacobi_eigh: off-diagonal norm above threshold after 100 sweeps");
        }
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (apq == 0.0) {
                    continue;
                }
                const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                double t;
                if (std::abs(theta) > 1.0e10) {
                    t = 0.5 / theta;  // avoids theta^2 overflow; same root to rounding
                } else {
                    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                    if (theta < 0.0) {
                        t = -t;
                    }
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                a[p * n + p] -= t * apq;
                a[q * n + q] += t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for (std::size_t r = 0; r < n; ++r) {
                    const double vrp = v[r * n + p];
                    const double vrq = v[r * n + q];
                    v[r * n + p] = vrp - s * (vrq + tau * vrp);
                    v[r * n + q] = vrq + s * (vrp - tau * vrq);
                    if (r == p || r == q) {
                        continue;
                    }
                    const double arp = a[r * n + p];
                    const double arq = a[r * n + q];
                    a[r * n + p] = arp - s * (arq + tau * arp);
                    a[p * n + r] = a[r * n + p];
                    a[r * n + q] = arq + s * (arp - tau * arq);
                    a[q * n + r] = a[r * n + q];
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&a, n](std::size_t x, std::size_t y) { return a[x * n + x] < a[y * n + y]; });

    EigenDecomposition out;
    out.mu.resize(n);
    out.vectors.resize(n * n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t col = order[k];
        out.mu[k] = a[col * n + col];
        std::size_t imax = 0;
        double vmax = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            out.vectors[k * n + i] = v[i * n + col];
            if (std::abs(out.vectors[k * n + i]) > vmax) {
                vmax = std::abs(out.vectors[k * n + i]);
                imax = i;
            }
        }
        if (out.vectors[k * n + imax] < 0.0) {
            for (std::size_t i = 0; i < n; ++i) {
                out.vectors[k * n + i] = -out.vectors[k * n + i];
            }
        }
    }
    return out;
}

SymmetricMatrix reconstruct(const EigenDecomposition& d) {
    const std::size_t n = d.size();
    SymmetricMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            double sum = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                sum += d.mu[k] * d.vec(k, i) * d.vec(k, j);
            }
            out.set(i, j, sum);
        }
    }
    return out;
}

}  // namespace cohsim
