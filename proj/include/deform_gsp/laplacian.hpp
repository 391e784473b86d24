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

#include <iosfwd>
#include <optional>
#include <span>

#include "deform_gsp/graph.hpp"
#include "deform_gsp/types.hpp"

namespace deform_gsp {

inline constexpr double kDefaultPsdTol = 1e-8;

/// Symmetric N x N operator. `r` is set when built as L_DF(r).
struct OperatorMatrix {
    Matrix entries;
    std::optional<double> r;

    std::size_t
    size() const noexcept {
        return static_cast<std::size_t>(entries.rows());
    }
};

/// L_DF(r) = (D - I) r^2 - A r + I with the mode-appropriate degree and
/// adjacency. Entries (i, j) and (j, i) come from the same expression, so
/// the result is exactly symmetric.
OperatorMatrix
deformed_laplacian(const Graph& g, double r);

/// D - A. Nonnegative graphs only.
OperatorMatrix
combinatorial_laplacian(const Graph& g);

/// D + A. Nonnegative graphs only.
OperatorMatrix
signless_laplacian(const Graph& g);

/// D_S - A_S with absolute-value degrees. Signed graphs only.
OperatorMatrix
signed_laplacian(const Graph& g);

/// Quadratic total variation x^T M x.
double
quadratic_form(const OperatorMatrix& m, std::span<const double> x);

double
min_eigenvalue(const OperatorMatrix& m);

/// True iff the smallest eigenvalue is >= -tol * max(1, max|entry|).
bool
is_psd(const OperatorMatrix& m, double tol = kDefaultPsdTol);

/// Threshold used by is_psd for a given matrix.
double
psd_threshold(const Matrix& m, double tol);

}  // namespace deform_gsp
