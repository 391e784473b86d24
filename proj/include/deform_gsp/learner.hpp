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
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "deform_gsp/graph.hpp"
#include "deform_gsp/laplacian.hpp"
#include "deform_gsp/rng.hpp"
#include "deform_gsp/spectral.hpp"

namespace deform_gsp {

enum class GridMode {
    Uniform,            // r_n = r_{n-1} + step
    PaperAccelerating,  // r_n = r_{n-1} + n * step, clamped at r_max
};

GridMode
parse_grid_mode(std::string_view name);

struct LearnConfig {
    double gamma = 1.0;
    std::size_t K = 1;
    double r_min = -1.0;
    double r_max = 1.0;
    double step = 0.01;
    double psd_tol = kDefaultPsdTol;
    GridMode grid = GridMode::Uniform;
    // Worker threads for the grid sweep; 0 picks hardware concurrency.
    unsigned threads = 1;
};

/// Throws InvalidParams / InvalidK when the config cannot run on N nodes.
void
validate(const LearnConfig& cfg, std::size_t n_nodes);

/// Sweep points from r_min to r_max. Both endpoints are always included
/// and hit exactly.
std::vector<double>
r_grid(const LearnConfig& cfg);

struct GridPoint {
    double r;
    OperatorMatrix laplacian;
    SpectralBasis basis;
    bool psd;
};

/// L_DF(r) and its eigen-decomposition at every sweep point. Independent of
/// the signals, so one grid serves any number of learn calls on a graph.
struct SpectralGrid {
    std::size_t n_nodes = 0;
    std::vector<GridPoint> points;
};

SpectralGrid
build_grid(const Graph& g, const LearnConfig& cfg);

struct FixedRSolution {
    std::vector<SparseCoefficients> coefficients;
    double fit_error = 0.0;  // sum over signals of squared residuals
};

/// Best K-term approximation of every column of X in the basis.
FixedRSolution
solve_fixed_r(const SpectralBasis& basis, const SignalMatrix& X, std::size_t K);

FixedRSolution
solve_fixed_r(const Graph& g, const SignalMatrix& X, double r, std::size_t K);

/// tr(X^T L X)
double
smoothness(const OperatorMatrix& laplacian, const SignalMatrix& X);

/// (1 - gamma) tr(X^T L_DF(r) X) + gamma ||X - U(r) S||_F^2
double
objective(const Graph& g, const SignalMatrix& X, double r,
          std::span<const SparseCoefficients> coefficients, double gamma);

struct TraceEntry {
    double r;
    double f;
    bool psd;
};

struct LearnResult {
    double r_star = 0.0;
    SpectralBasis basis;
    std::vector<SparseCoefficients> coefficients;
    SignalMatrix reconstruction;
    std::vector<TraceEntry> objective_trace;
    double f_min = 0.0;
};

/// PSD-gated line search over r. Non-PSD points stay in the trace but never
/// win; equal objective values keep the first (smallest) r.
LearnResult
learn(const Graph& g, const SignalMatrix& X, const LearnConfig& cfg);

LearnResult
learn(const SpectralGrid& grid, const SignalMatrix& X, const LearnConfig& cfg);

/// M signals x = U_K s with i.i.d. standard normal s on `support`.
SignalMatrix
bandlimited_signals(const SpectralBasis& basis, std::span<const std::size_t> support,
                    std::size_t M, Rng& rng);

/// i.i.d. standard normal N x M.
SignalMatrix
gaussian_signals(std::size_t n, std::size_t M, Rng& rng);

using SignalGenerator = std::function<SignalMatrix(Rng&)>;

struct GammaSweepRow {
    double gamma;
    double mean_r_star;
    double min_r_star;
    double max_r_star;
};

/// Trial t draws its signals from make_rng(seed, t); the same realisations
/// are reused for every gamma.
std::vector<GammaSweepRow>
gamma_sweep(const Graph& g, const SignalGenerator& signal_gen, std::span<const double> gammas,
            std::size_t trials, const LearnConfig& cfg, std::uint64_t seed);

struct DynamicRow {
    std::size_t t;  // 1-based time index
    double nmse_deformed;
    double nmse_r1;
    double nmse_rminus1;
    double mean_r_star;
};

/// For every topology, each signal is fitted on its own (gamma = 1) and the
/// per-signal NMSE is averaged. The fixed columns evaluate r = 1 and r = -1
/// (NaN when that operator is not PSD).
std::vector<DynamicRow>
dynamic_experiment(std::span<const Graph> sequence, const SignalMatrix& X, const LearnConfig& cfg);

}  // namespace deform_gsp
