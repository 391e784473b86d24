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
#include <string_view>
#include <vector>

#include "deform_gsp/graph.hpp"
#include "deform_gsp/rng.hpp"

namespace deform_gsp {

enum class GraphKind {
    Clustered,
    Bipartite,
    SignedBalanced,
    ErdosRenyi,
    DynamicSequence,
    Karate,
    Mixed,
};

GraphKind
parse_graph_kind(std::string_view name);

struct GeneratorParams {
    // ErdosRenyi / DynamicSequence node count.
    std::size_t n_nodes = 30;
    // ErdosRenyi edge probability.
    double p = 0.2;
    // Clustered: cluster sizes. Bipartite, SignedBalanced, Mixed: the two
    // side sizes. Empty: n_nodes split evenly into `clusters` clusters or
    // two sides.
    std::vector<std::size_t> sizes;
    double p_in = 0.8;
    double p_out = 0.05;
    // Bipartite: number of blocks each side is cut into.
    std::size_t blocks = 1;
    // DynamicSequence; `clusters` also sizes the default Clustered graph.
    std::size_t length = 40;
    std::size_t clusters = 3;
};

Graph
erdos_renyi(std::size_t n, double p, Rng& rng);

Graph
clustered_graph(const std::vector<std::size_t>& sizes, double p_in, double p_out, Rng& rng);

/// Bipartite between side A = [0, n_a) and side B = [n_a, n_a + n_b). Each
/// side is cut into `blocks` contiguous groups; a cross pair is linked with
/// probability p_in inside a block and p_out across blocks.
Graph
bipartite_graph(std::size_t n_a, std::size_t n_b, double p_in, double p_out, std::size_t blocks,
                Rng& rng);

/// Two groups with +1 edges inside (probability p_in) and -1 edges between
/// (probability p_out). Balanced by construction.
Graph
signed_balanced_graph(std::size_t n_a, std::size_t n_b, double p_in, double p_out, Rng& rng);

/// Quasi-bipartite clustered graph: two sides, each split into two
/// clusters. Cross-side pairs in the same cluster link with probability
/// p_in, every other pair with p_out.
Graph
mixed_graph(std::size_t n_a, std::size_t n_b, double p_in, double p_out, Rng& rng);

/// Random graph at t = 1, a `clusters`-cluster graph at t = length / 2 and
/// a bipartite graph at t = length, joined by monotone edge rewiring.
std::vector<Graph>
dynamic_sequence(std::size_t n, std::size_t length, double p, std::size_t clusters, double p_in,
                 double p_out, Rng& rng);

/// Zachary's karate club, 34 nodes, 78 unit-weight edges.
Graph
karate_club();

/// Dispatch by kind. Returns one graph except for DynamicSequence.
std::vector<Graph>
generate(GraphKind kind, const GeneratorParams& params, std::uint64_t seed);

}  // namespace deform_gsp
