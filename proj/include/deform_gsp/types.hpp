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

#include <Eigen/Dense>
#include <span>

namespace deform_gsp {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// N x M matrix of graph signals, one observation per column.
using SignalMatrix = Eigen::MatrixXd;

inline std::span<const double>
column(const Matrix& m, Eigen::Index j) {
    return {m.col(j).data(), static_cast<std::size_t>(m.rows())};
}

inline std::span<double>
column(Matrix& m, Eigen::Index j) {
    return {m.col(j).data(), static_cast<std::size_t>(m.rows())};
}

inline std::span<const double>
as_span(const Vector& v) {
    return {v.data(), static_cast<std::size_t>(v.size())};
}

inline std::span<double>
as_span(Vector& v) {
    return {v.data(), static_cast<std::size_t>(v.size())};
}

}  // namespace deform_gsp
