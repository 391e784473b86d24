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

#include "deform_gsp/pep.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <fmt/format.h>

#include "deform_gsp/error.hpp"
#include "deform_gsp/laplacian.hpp"

namespace deform_gsp {

namespace {

// One staircase step: if M has a numerical kernel of dimension k, rotate it
// into the leading k coordinates and return the trailing block, whose
// eigenvalues are those of M minus k zeros.
bool
deflate_kernel(Matrix& m, double zero_tol, std::size_t& deflated) {
    const Eigen::Index n = m.rows();
    if (n == 0) {
        return false;
    }
    Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeFullV);
    const Vector& sigma = svd.singularValues();  // descending
    const double cutoff = zero_tol * std::max(1.0, sigma(0));
    Eigen::Index rank = 0;
    while (rank < n && sigma(rank) > cutoff) {
        ++rank;
    }
    const Eigen::Index k = n - rank;
    if (k == 0) {
        return false;
    }
    // Columns [0, rank) of V span the row space, [rank, n) the kernel.
    const Matrix range = svd.matrixV().leftCols(rank);
    m = range.transpose() * m * range;
    deflated += static_cast<std::size_t>(k);
    return true;
}

}  // namespace

Matrix
companion_matrix(const Graph& g) {
    const auto n = static_cast<Eigen::Index>(g.size());
    const Vector degree = degree_matrix(g).diagonal;
    Matrix c = Matrix::Zero(2 * n, 2 * n);
    c.topRightCorner(n, n).setIdentity();
    for (Eigen::Index i = 0; i < n; ++i) {
        c(n + i, i) = -(degree(i) - 1.0);
    }
    c.bottomRightCorner(n, n) = g.weights();
    return c;
}

PepSpectrum
pep_spectrum(const Graph& g, double zero_tol) {
    if (!(zero_tol > 0.0)) {
        throw Error(Errc::InvalidParams, "zero_tol must be positive");
    }
    PepSpectrum out;
    const Vector degree = degree_matrix(g).diagonal;
    for (Eigen::Index i = 0; i < degree.size(); ++i) {
        if (std::abs(degree(i) - 1.0) <= zero_tol) {
            ++out.infinite_geometric;
        }
    }

    Matrix m = companion_matrix(g);
    while (deflate_kernel(m, zero_tol, out.infinite_multiplicity)) {
    }
    if (m.rows() > 0) {
        Eigen::EigenSolver<Matrix> solver(m, false);
        if (solver.info() != Eigen::Success) {
            throw Error(Errc::ConvergenceFailure, "nonsymmetric eigensolver did not converge");
        }
        for (const std::complex<double>& mu : solver.eigenvalues()) {
            if (std::abs(mu) <= zero_tol) {
                ++out.infinite_multiplicity;
            } else {
                out.finite_eigenvalues.push_back(1.0 / mu);
            }
        }
    }
    std::sort(out.finite_eigenvalues.begin(), out.finite_eigenvalues.end(),
              [](const std::complex<double>& a, const std::complex<double>& b) {
                  return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
              });
    return out;
}

std::size_t
kernel_dimension(const Matrix& m, double tol) {
    if (m.size() == 0) {
        return 0;
    }
    Eigen::BDCSVD<Matrix> svd(m);
    const Vector& sigma = svd.singularValues();
    const double cutoff = tol * sigma(0);
    std::size_t count = 0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        count += sigma(i) <= cutoff ? 1 : 0;
    }
    return count;
}

StructureReport
structure_report(const Graph& g, double tol) {
    if (!(tol > 0.0)) {
        throw Error(Errc::InvalidParams, "tol must be positive");
    }
    StructureReport report;
    report.one_multiplicity = kernel_dimension(deformed_laplacian(g, 1.0).entries, tol);
    report.has_one = report.one_multiplicity > 0;
    report.minus_one_multiplicity = kernel_dimension(deformed_laplacian(g, -1.0).entries, tol);
    report.has_minus_one = report.minus_one_multiplicity > 0;
    report.has_zero = std::abs(deformed_laplacian(g, 0.0).entries.determinant() - 1.0) > tol;
    report.bipartite_components = bipartite_component_count(g);
    report.balanced_components = balanced_component_count(g);
    for (const auto& lambda : pep_spectrum(g, tol).finite_eigenvalues) {
        report.max_finite_modulus = std::max(report.max_finite_modulus, std::abs(lambda));
    }
    return report;
}

}  // namespace deform_gsp
