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

#include <complex>
#include <cstddef>
#include <vector>

#include "deform_gsp/graph.hpp"
#include "deform_gsp/types.hpp"

namespace deform_gsp {

inline constexpr double kDefaultZeroTol = 1e-8;

/// Eigenvalues of the quadratic matrix polynomial L_DF(lambda).
struct PepSpectrum {
    std::vector<std::complex<double>> finite_eigenvalues;  // sorted by (re, im)
    std::size_t infinite_multiplicity = 0;                // algebraic
    std::size_t infinite_geometric = 0;
};

struct StructureReport {
    bool has_one = false;
    std::size_t one_multiplicity = 0;
    bool has_minus_one = false;
    std::size_t minus_one_multiplicity = 0;
    bool has_zero = false;
    std::size_t bipartite_components = 0;
    std::size_t balanced_components = 0;
    double max_finite_modulus = 0.0;
};

/// Companion linearisation of the reversal rev(mu) = mu^2 I - A mu + (D - I):
///
///     [   0      I ]
///     [ -(D-I)   A ]
///
/// Its eigenvalues mu are the roots of det(rev(mu)); finite eigenvalues of
/// L_DF are 1/mu for mu != 0, and mu = 0 accounts for the infinite ones.
/// L_DF(0) = I makes rev monic, so no coefficient inversion is needed.
Matrix
companion_matrix(const Graph& g);

/// All 2N eigenvalues of L_DF. The zero eigenvalue of the companion matrix
/// is deflated first by an orthogonal staircase reduction (rank decisions
/// at `zero_tol` relative to max(1, sigma_max)); the remaining block is
/// handed to a dense nonsymmetric eigensolver and inverted.
PepSpectrum
pep_spectrum(const Graph& g, double zero_tol = kDefaultZeroTol);

/// dim ker M from singular values: count of sigma <= tol * sigma_max.
std::size_t
kernel_dimension(const Matrix& m, double tol = kDefaultZeroTol);

StructureReport
structure_report(const Graph& g, double tol = kDefaultZeroTol);

}  // namespace deform_gsp
