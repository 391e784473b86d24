// Copyright 2026-present the deform-gsp project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "deform_gsp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "deform_gsp/error.hpp"
#include "deform_gsp/simd/kernels.hpp"

namespace deform_gsp {

namespace {

// Two magnitudes closer than this (relative to the largest coefficient)
// are treated as tied, so round-off cannot override the index rule.
constexpr double kTieTolerance = 1e-12;

void
check_dim(std::size_t got, std::size_t want, const char* what) {
    if (got != want) {
        throw Error(Errc::DimensionMismatch, fmt::format("{}: got {} entries, expected {}", what,
                                                         got, want));
    }
}

}  // namespace

SpectralBasis
eig_sym(const OperatorMatrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m.entries, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw Error(Errc::ConvergenceFailure, "symmetric eigensolver did not converge");
    }
    const Vector& values = solver.eigenvalues();
    const Matrix& vectors = solver.eigenvectors();
    const auto n = values.size();

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&values](Eigen::Index a, Eigen::Index b) { return values(a) < values(b); });

    SpectralBasis basis{Vector(n), Matrix(n, n), m.r};
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index src = order[static_cast<std::size_t>(k)];
        basis.eigenvalues(k) = values(src);
        basis.eigenvectors.col(k) = vectors.col(src);
        for (Eigen::Index i = 0; i < n; ++i) {
            const double v = basis.eigenvectors(i, k);
            if (std::abs(v) > kSignThreshold) {
                if (v < 0.0) {
                    basis.eigenvectors.col(k) *= -1.0;
                }
                break;
            }
        }
    }
    return basis;
}

Vector
dgft(const SpectralBasis& b, std::span<const double> x) {
    check_dim(x.size(), b.size(), "dgft");
    const auto n = static_cast<Eigen::Index>(b.size());
    Vector s(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        s(k) = simd::dot(column(b.eigenvectors, k), x);
    }
    return s;
}

Vector
idgft(const SpectralBasis& b, std::span<const double> s) {
    check_dim(s.size(), b.size(), "idgft");
    Vector x = Vector::Zero(static_cast<Eigen::Index>(b.size()));
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (s[k] != 0.0) {
            simd::axpy(s[k], column(b.eigenvectors, static_cast<Eigen::Index>(k)), as_span(x));
        }
    }
    return x;
}

Vector
idgft(const SpectralBasis& b, const SparseCoefficients& s) {
    check_dim(s.full_dim, b.size(), "idgft");
    if (s.values.size() != s.support.size()) {
        throw Error(Errc::DimensionMismatch, "support and values differ in length");
    }
    Vector x = Vector::Zero(static_cast<Eigen::Index>(b.size()));
    for (std::size_t k = 0; k < s.support.size(); ++k) {
        if (s.support[k] >= b.size()) {
            throw Error(Errc::DimensionMismatch,
                        fmt::format("support index {} outside basis of size {}", s.support[k],
                                    b.size()));
        }
        simd::axpy(s.values[k], column(b.eigenvectors, static_cast<Eigen::Index>(s.support[k])),
                   as_span(x));
    }
    return x;
}

SparseCoefficients
topk_project(const SpectralBasis& b, std::span<const double> x, std::size_t K) {
    const std::size_t n = b.size();
    if (K < 1 || K > n) {
        throw Error(Errc::InvalidK, fmt::format("K = {} outside [1, {}]", K, n));
    }
    const Vector coeffs = dgft(b, x);
    const double tie = kTieTolerance * std::max(coeffs.cwiseAbs().maxCoeff(), 1e-300);

    // Repeated scan: each pass takes the first index whose magnitude beats
    // the running best by more than the tie tolerance.
    std::vector<bool> taken(n, false);
    SparseCoefficients out;
    out.full_dim = n;
    out.support.reserve(K);
    for (std::size_t pass = 0; pass < K; ++pass) {
        std::size_t best = n;
        double best_mag = -1.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double mag = std::abs(coeffs(static_cast<Eigen::Index>(k)));
            if (!taken[k] && (best == n || mag > best_mag + tie)) {
                best = k;
                best_mag = mag;
            }
        }
        taken[best] = true;
        out.support.push_back(best);
    }
    std::sort(out.support.begin(), out.support.end());
    out.values.reserve(K);
    for (const std::size_t k : out.support) {
        out.values.push_back(coeffs(static_cast<Eigen::Index>(k)));
    }
    return out;
}

double
projection_residual(const SpectralBasis& b, std::span<const double> x,
                    const SparseCoefficients& s) {
    check_dim(x.size(), b.size(), "projection_residual");
    const Vector approx = idgft(b, s);
    return std::sqrt(simd::sum_sq_diff(x, as_span(approx)));
}

double
nmse(const SignalMatrix& x_true, const SignalMatrix& x_hat, NmseMode mode) {
    if (x_true.rows() != x_hat.rows() || x_true.cols() != x_hat.cols()) {
        throw Error(Errc::DimensionMismatch,
                    fmt::format("shapes {}x{} and {}x{} differ", x_true.rows(), x_true.cols(),
                                x_hat.rows(), x_hat.cols()));
    }
    if (x_true.cols() == 0) {
        throw Error(Errc::ZeroReference, "no signals");
    }
    if (mode == NmseMode::Frobenius) {
        const double ref = x_true.norm();
        if (ref == 0.0) {
            throw Error(Errc::ZeroReference, "reference signal matrix is zero");
        }
        return (x_true - x_hat).norm() / ref;
    }
    double total = 0.0;
    for (Eigen::Index i = 0; i < x_true.cols(); ++i) {
        const double ref = x_true.col(i).norm();
        if (ref == 0.0) {
            throw Error(Errc::ZeroReference, fmt::format("reference signal {} is zero", i));
        }
        total += std::sqrt(simd::sum_sq_diff(column(x_true, i), column(x_hat, i))) / ref;
    }
    return total / static_cast<double>(x_true.cols());
}

void
write_coefficients_csv(std::ostream& out, std::span<const SparseCoefficients> coefficients) {
    const std::size_t K = coefficients.empty() ? 0 : coefficients.front().support.size();
    for (std::size_t k = 0; k < K; ++k) {
        out << (k == 0 ? "" : ",") << fmt::format("index_{},value_{}", k, k);
    }
    out << '\n';
    for (const SparseCoefficients& c : coefficients) {
        for (std::size_t k = 0; k < c.support.size(); ++k) {
            out << (k == 0 ? "" : ",") << fmt::format("{},{}", c.support[k], c.values[k]);
        }
        out << '\n';
    }
}

}  // namespace deform_gsp
