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

#include "deform_gsp/dynamics.hpp"

#include <cmath>
#include <ostream>

#include <fmt/format.h>

#include "deform_gsp/error.hpp"
#include "deform_gsp/laplacian.hpp"
#include "deform_gsp/spectral.hpp"

namespace deform_gsp {

namespace {

void
require_nonnegative(const Graph& g) {
    if (g.mode() != Mode::Nonnegative) {
        throw Error(Errc::WrongMode, "reaction-diffusion dynamics are defined for nonnegative graphs");
    }
}

void
check_state(const Graph& g, std::span<const double> phi) {
    if (phi.size() != g.size()) {
        throw Error(Errc::DimensionMismatch,
                    fmt::format("state has {} entries, graph has {} nodes", phi.size(), g.size()));
    }
}

void
check_eta(double eta) {
    if (!(eta > 0.0) || !std::isfinite(eta)) {
        throw Error(Errc::InvalidParams, "eta must be a positive finite number");
    }
}

}  // namespace

Integrator
parse_integrator(std::string_view name) {
    if (name == "euler") {
        return Integrator::Euler;
    }
    if (name == "exact") {
        return Integrator::SpectralExact;
    }
    throw Error(Errc::InvalidParams, fmt::format("unknown integrator \"{}\"", name));
}

Vector
reaction_term(const Graph& g, double r, std::span<const double> phi) {
    require_nonnegative(g);
    check_state(g, phi);
    const Vector degree = degree_matrix(g).diagonal;
    Vector h(degree.size());
    for (Eigen::Index i = 0; i < degree.size(); ++i) {
        const double d = degree(i);
        h(i) = phi[static_cast<std::size_t>(i)] * ((1.0 - d) * r * r + d * r - 1.0);
    }
    return h;
}

Vector
rhs(const Graph& g, double r, std::span<const double> phi, double eta) {
    check_eta(eta);
    Vector out = reaction_term(g, r, phi);
    const std::size_t n = g.size();
    for (std::size_t i = 0; i < n; ++i) {
        double diffusion = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            diffusion += g.weight(i, j) * (phi[i] - phi[j]);
        }
        out(static_cast<Eigen::Index>(i)) -= eta * r * diffusion;
    }
    return out;
}

Matrix
dynamics_generator(const Graph& g, double r, double eta) {
    require_nonnegative(g);
    check_eta(eta);
    if (eta == 1.0) {
        return deformed_laplacian(g, r).entries;
    }
    // eta scales only the diffusive coupling r (D - A); the reaction stays.
    const Vector degree = degree_matrix(g).diagonal;
    Matrix gen = -eta * r * g.weights();
    for (Eigen::Index i = 0; i < degree.size(); ++i) {
        const double d = degree(i);
        gen(i, i) = eta * r * d - ((1.0 - d) * r * r + d * r - 1.0);
    }
    return gen;
}

std::vector<DynamicsState>
simulate(const Graph& g, double r, std::span<const double> phi0, double dt, std::size_t steps,
         Integrator method, double eta) {
    require_nonnegative(g);
    check_state(g, phi0);
    check_eta(eta);
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw Error(Errc::InvalidParams, "dt must be a positive finite number");
    }
    const OperatorMatrix gen{dynamics_generator(g, r, eta), r};
    const SpectralBasis basis = eig_sym(gen);
    const double lambda_max = basis.eigenvalues(basis.eigenvalues.size() - 1);

    std::vector<DynamicsState> trajectory;
    trajectory.reserve(steps + 1);
    Vector phi = Eigen::Map<const Vector>(phi0.data(), static_cast<Eigen::Index>(phi0.size()));
    trajectory.push_back({phi, 0.0, r, eta});

    if (method == Integrator::Euler) {
        if (lambda_max > 0.0 && dt * lambda_max >= 2.0) {
            throw Error(Errc::UnstableStepSize,
                        fmt::format("Euler needs dt < 2/lambda_max = {} (lambda_max = {}), got "
                                    "dt = {}",
                                    2.0 / lambda_max, lambda_max, dt));
        }
        for (std::size_t k = 1; k <= steps; ++k) {
            phi = phi - dt * (gen.entries * phi);
            trajectory.push_back({phi, static_cast<double>(k) * dt, r, eta});
        }
        return trajectory;
    }

    const Vector coeffs = dgft(basis, phi0);
    for (std::size_t k = 1; k <= steps; ++k) {
        const double t = static_cast<double>(k) * dt;
        Vector decayed(coeffs.size());
        for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
            decayed(i) = std::exp(-basis.eigenvalues(i) * t) * coeffs(i);
        }
        trajectory.push_back({idgft(basis, as_span(decayed)), t, r, eta});
    }
    return trajectory;
}

void
write_trajectory_csv(std::ostream& out, std::span<const DynamicsState> trajectory) {
    const Eigen::Index n = trajectory.empty() ? 0 : trajectory.front().phi.size();
    out << "t";
    for (Eigen::Index i = 0; i < n; ++i) {
        out << ",phi_" << i;
    }
    out << '\n';
    for (const DynamicsState& s : trajectory) {
        out << fmt::format("{}", s.time);
        for (Eigen::Index i = 0; i < s.phi.size(); ++i) {
            out << ',' << fmt::format("{}", s.phi(i) == 0.0 ? 0.0 : s.phi(i));
        }
        out << '\n';
    }
}

}  // namespace deform_gsp
