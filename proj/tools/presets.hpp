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
#include <optional>
#include <string_view>
#include <vector>

#include "deform_gsp/generators.hpp"
#include "deform_gsp/graph.hpp"
#include "deform_gsp/learner.hpp"

namespace deform_gsp::presets {

// Graphs are drawn from stream 0 of the root seed and signals from stream 1.

struct GammaSweepSetup {
    GraphKind kind = GraphKind::Bipartite;  // Bipartite or Clustered
    std::size_t n_nodes = 60;
    std::size_t trials = 50;
    std::size_t K = 3;
    double step = 0.05;
    std::uint64_t seed = 1;
};

struct GammaSweepOutput {
    Graph graph;
    std::vector<GammaSweepRow> rows;
};

/// Bipartite: three disconnected bipartite communities, signals in the span
/// of the first K signless-Laplacian eigenvectors. Clustered: three dense
/// clusters, signals from the first K combinatorial-Laplacian
/// eigenvectors. Gamma runs over 0, 0.1, ..., 1.
GammaSweepOutput
gamma_sweep(const GammaSweepSetup& setup);

struct DynamicNmseSetup {
    std::size_t n_nodes = 30;
    std::size_t length = 40;
    std::size_t signals = 20;
    std::size_t K = 3;
    double step = 0.05;
    std::uint64_t seed = 1;
};

struct DynamicNmseOutput {
    std::vector<Graph> sequence;
    SignalMatrix signals;
    std::vector<DynamicRow> rows;
};

DynamicNmseOutput
dynamic_nmse(const DynamicNmseSetup& setup);

/// Mixed quasi-bipartite clustered graph used for the interior-optimum study.
Graph
mixed_study_graph(std::size_t n_nodes, std::uint64_t seed);

struct NmseVsRSetup {
    std::size_t n_nodes = 20;
    std::size_t signals = 20;
    std::size_t K = 3;
    double r0 = 0.3;
    double step = 0.05;
    std::uint64_t seed = 1;
};

struct NmseVsRRow {
    double r;
    bool psd;
    double nmse;  // per-signal mean
};

struct NmseVsROutput {
    Graph graph;
    SignalMatrix signals;
    std::vector<NmseVsRRow> rows;
    double r_star;
};

/// Signals are K-bandlimited in the basis of L_DF(r0) on the first K
/// eigenvectors; the table is the K-sparse fitting NMSE at each grid r.
NmseVsROutput
nmse_vs_r(const NmseVsRSetup& setup);

struct SparsitySetup {
    std::optional<Graph> graph;           // default: mixed study graph
    std::optional<SignalMatrix> signals;  // default: Gaussian
    std::size_t n_nodes = 20;
    std::size_t n_signals = 20;
    double step = 0.05;
    std::uint64_t seed = 1;
};

struct SparsityRow {
    std::size_t K;
    double r_star;
    double nmse;  // Frobenius
};

struct SparsityOutput {
    Graph graph;
    SignalMatrix signals;
    std::vector<SparsityRow> rows;
};

/// Learns r* with gamma = 1 for every K = 1..N.
SparsityOutput
nmse_vs_sparsity(const SparsitySetup& setup);

}  // namespace deform_gsp::presets
