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

#include "deform_gsp/laplacian.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "deform_gsp/error.hpp"
#include "deform_gsp/simd/kernels.hpp"

namespace deform_gsp {

namespace {

void
require_mode(const Graph& g, Mode mode, const char* what) {
    if (g.mode() != mode) {
        throw Error(Errc::WrongMode, fmt::format("{} requires a {} graph, got {}", what,
                                                 to_string(mode), to_string(g.mode())));
    }
}

// diag(degree) + sign * A, off-diagonals as sign * a_ij.
OperatorMatrix
degree_plus_adjacency(const Graph& g, double sign) {
    const Vector degree = degree_matrix(g).diagonal;
    const auto n = static_cast<Eigen::Index>(g.size());
    Matrix out(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        simd::scale(sign, column(g.weights(), j), column(out, j));
        out(j, j) = degree(j);
    }
    return {std::move(out), std::nullopt};
}

}  // namespace

OperatorMatrix
deformed_laplacian(const Graph& g, double r) {
    if (!std::isfinite(r)) {
        throw Error(Errc::InvalidParams, "r must be finite");
    }
    const Vector degree = degree_matrix(g).diagonal;
    const auto n = static_cast<Eigen::Index>(g.size());
    const double r2 = r * r;
    Matrix out(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        simd::scale(-r, column(g.weights(), j), column(out, j));
        // a_jj = 0, so the linear term vanishes on the diagonal.
        out(j, j) = (degree(j) - 1.0) * r2 + 1.0;
    }
    return {std::move(out), r};
}

OperatorMatrix
combinatorial_laplacian(const Graph& g) {
    require_mode(g, Mode::Nonnegative, "combinatorial_laplacian");
    return degree_plus_adjacency(g, -1.0);
}

OperatorMatrix
signless_laplacian(const Graph& g) {
    require_mode(g, Mode::Nonnegative, "signless_laplacian");
    return degree_plus_adjacency(g, 1.0);
}

OperatorMatrix
signed_laplacian(const Graph& g) {
    require_mode(g, Mode::Signed, "signed_laplacian");
    return degree_plus_adjacency(g, -1.0);
}

double
quadratic_form(const OperatorMatrix& m, std::span<const double> x) {
    if (x.size() != m.size()) {
        throw Error(Errc::DimensionMismatch,
                    fmt::format("signal has {} entries, operator is {}x{}", x.size(), m.size(),
                                m.size()));
    }
    double sum = 0.0;
    for (Eigen::Index j = 0; j < m.entries.cols(); ++j) {
        sum += x[static_cast<std::size_t>(j)] * simd::dot(column(m.entries, j), x);
    }
    return sum;
}

double
min_eigenvalue(const OperatorMatrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m.entries, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw Error(Errc::ConvergenceFailure, "symmetric eigensolver did not converge");
    }
    return solver.eigenvalues().minCoeff();
}

double
psd_threshold(const Matrix& m, double tol) {
    return -tol * std::max(1.0, m.cwiseAbs().maxCoeff());
}

bool
is_psd(const OperatorMatrix& m, double tol) {
    if (tol < 0.0) {
        throw Error(Errc::InvalidParams, "tolerance must be nonnegative");
    }
    return min_eigenvalue(m) >= psd_threshold(m.entries, tol);
}

}  // namespace deform_gsp
