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
#include <span>
#include <string_view>
#include <vector>

#include "deform_gsp/graph.hpp"
#include "deform_gsp/types.hpp"

namespace deform_gsp {

struct DynamicsState {
    Vector phi;
    double time = 0.0;
    double r = 0.0;
    double eta = 1.0;
};

enum class Integrator { Euler, SpectralExact };

Integrator
parse_integrator(std::string_view name);

/// Node-wise reaction h_i = phi_i [(1 - d_ii) r^2 + d_ii r - 1].
Vector
reaction_term(const Graph& g, double r, std::span<const double> phi);

/// d phi_i / dt = -eta r sum_j a_ij (phi_i - phi_j) + h_i, assembled node
/// by node. At eta = 1 this equals -L_DF(r) phi.
Vector
rhs(const Graph& g, double r, std::span<const double> phi, double eta = 1.0);

/// Matrix G with d phi / dt = -G phi; G = L_DF(r) at eta = 1.
Matrix
dynamics_generator(const Graph& g, double r, double eta = 1.0);

/// Trajectory at t = k dt for k = 0..steps. Euler requires
/// dt * lambda_max(G) < 2.
std::vector<DynamicsState>
simulate(const Graph& g, double r, std::span<const double> phi0, double dt, std::size_t steps,
         Integrator method, double eta = 1.0);

/// Columns t, phi_0 .. phi_{N-1}.
void
write_trajectory_csv(std::ostream& out, std::span<const DynamicsState> trajectory);

}  // namespace deform_gsp
