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

#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "deform_gsp/laplacian.hpp"
#include "deform_gsp/types.hpp"

namespace deform_gsp {

/// Eigen-decomposition of a symmetric operator. Eigenvalues ascend; column
/// k of `eigenvectors` pairs with eigenvalue k and its first entry of
/// magnitude > 1e-12 is positive.
struct SpectralBasis {
    Vector eigenvalues;
    Matrix eigenvectors;
    std::optional<double> r;

    std::size_t
    size() const noexcept {
        return static_cast<std::size_t>(eigenvalues.size());
    }
};

/// K-sparse spectral coefficients. `support` is strictly increasing.
struct SparseCoefficients {
    std::vector<std::size_t> support;
    std::vector<double> values;
    std::size_t full_dim = 0;
};

enum class NmseMode { PerSignalMean, Frobenius };

inline constexpr double kSignThreshold = 1e-12;

SpectralBasis
eig_sym(const OperatorMatrix& m);

/// Forward DGFT: U^T x.
Vector
dgft(const SpectralBasis& b, std::span<const double> x);

/// Inverse DGFT: U s.
Vector
idgft(const SpectralBasis& b, std::span<const double> s);

/// Inverse DGFT of a sparse coefficient vector: U_K s_K.
Vector
idgft(const SpectralBasis& b, const SparseCoefficients& s);

/// Keeps the K largest |(U^T x)_k|; among equal magnitudes the smaller
/// index wins. This is the best K-term approximation of x in the basis.
SparseCoefficients
topk_project(const SpectralBasis& b, std::span<const double> x, std::size_t K);

/// || x - U_K s_K ||_2
double
projection_residual(const SpectralBasis& b, std::span<const double> x,
                    const SparseCoefficients& s);

double
nmse(const SignalMatrix& x_true, const SignalMatrix& x_hat, NmseMode mode = NmseMode::Frobenius);

/// One row per signal: "index_0,value_0,...,index_{K-1},value_{K-1}".
void
write_coefficients_csv(std::ostream& out, std::span<const SparseCoefficients> coefficients);

}  // namespace deform_gsp
