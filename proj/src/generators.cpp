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

#include "deform_gsp/generators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include <fmt/format.h>

#include "deform_gsp/error.hpp"

namespace deform_gsp {

namespace {

void
check_probability(double p, std::string_view name) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(Errc::InvalidParams, fmt::format("{} = {} is not a probability", name, p));
    }
}

bool
coin(Rng& rng, double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

using EdgeSet = std::vector<std::pair<std::size_t, std::size_t>>;

EdgeSet
edge_pairs(const Graph& g) {
    EdgeSet out;
    for (const Edge& e : g.edges()) {
        out.emplace_back(e.i, e.j);
    }
    return out;
}

Graph
from_pairs(std::size_t n, const EdgeSet& pairs) {
    std::vector<Edge> edges;
    edges.reserve(pairs.size());
    for (const auto& [i, j] : pairs) {
        edges.push_back({i, j, 1.0});
    }
    return Graph::from_edges(n, Mode::Nonnegative, edges);
}

// Pairs (i < j) present in exactly one of the two sorted edge sets.
EdgeSet
symmetric_difference(const EdgeSet& a, const EdgeSet& b) {
    EdgeSet out;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// 34-node Zachary karate club (0-based).
constexpr std::array<std::pair<int, int>, 78> kKarateEdges{{
    {0, 1},   {0, 2},   {0, 3},   {0, 4},   {0, 5},   {0, 6},   {0, 7},   {0, 8},   {0, 10},
    {0, 11},  {0, 12},  {0, 13},  {0, 17},  {0, 19},  {0, 21},  {0, 31},  {1, 2},   {1, 3},
    {1, 7},   {1, 13},  {1, 17},  {1, 19},  {1, 21},  {1, 30},  {2, 3},   {2, 7},   {2, 8},
    {2, 9},   {2, 13},  {2, 27},  {2, 28},  {2, 32},  {3, 7},   {3, 12},  {3, 13},  {4, 6},
    {4, 10},  {5, 6},   {5, 10},  {5, 16},  {6, 16},  {8, 30},  {8, 32},  {8, 33},  {9, 33},
    {13, 33}, {14, 32}, {14, 33}, {15, 32}, {15, 33}, {18, 32}, {18, 33}, {19, 33}, {20, 32},
    {20, 33}, {22, 32}, {22, 33}, {23, 25}, {23, 27}, {23, 29}, {23, 32}, {23, 33}, {24, 25},
    {24, 27}, {24, 31}, {25, 31}, {26, 29}, {26, 33}, {27, 33}, {28, 31}, {28, 33}, {29, 32},
    {29, 33}, {30, 32}, {30, 33}, {31, 32}, {31, 33}, {32, 33},
}};

std::vector<std::size_t>
even_split(std::size_t n, std::size_t parts) {
    std::vector<std::size_t> sizes(parts, n / parts);
    for (std::size_t k = 0; k < n % parts; ++k) {
        ++sizes[k];
    }
    return sizes;
}

}  // namespace

GraphKind
parse_graph_kind(std::string_view name) {
    if (name == "clustered") {
        return GraphKind::Clustered;
    }
    if (name == "bipartite") {
        return GraphKind::Bipartite;
    }
    if (name == "signed" || name == "signed-balanced") {
        return GraphKind::SignedBalanced;
    }
    if (name == "erdos-renyi" || name == "random") {
        return GraphKind::ErdosRenyi;
    }
    if (name == "dynamic") {
        return GraphKind::DynamicSequence;
    }
    if (name == "karate") {
        return GraphKind::Karate;
    }
    if (name == "mixed") {
        return GraphKind::Mixed;
    }
    throw Error(Errc::InvalidParams, fmt::format("unknown graph kind \"{}\"", name));
}

Graph
erdos_renyi(std::size_t n, double p, Rng& rng) {
    check_probability(p, "p");
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (coin(rng, p)) {
                edges.push_back({i, j, 1.0});
            }
        }
    }
    return Graph::from_edges(n, Mode::Nonnegative, edges);
}

Graph
clustered_graph(const std::vector<std::size_t>& sizes, double p_in, double p_out, Rng& rng) {
    check_probability(p_in, "p_in");
    check_probability(p_out, "p_out");
    if (sizes.empty() || std::find(sizes.begin(), sizes.end(), 0U) != sizes.end()) {
        throw Error(Errc::InvalidParams, "cluster sizes must be positive");
    }
    std::vector<std::size_t> cluster;
    for (std::size_t c = 0; c < sizes.size(); ++c) {
        cluster.insert(cluster.end(), sizes[c], c);
    }
    const std::size_t n = cluster.size();
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (coin(rng, cluster[i] == cluster[j] ? p_in : p_out)) {
                edges.push_back({i, j, 1.0});
            }
        }
    }
    return Graph::from_edges(n, Mode::Nonnegative, edges);
}

Graph
bipartite_graph(std::size_t n_a, std::size_t n_b, double p_in, double p_out, std::size_t blocks,
                Rng& rng) {
    check_probability(p_in, "p_in");
    check_probability(p_out, "p_out");
    if (n_a == 0 || n_b == 0 || blocks == 0 || blocks > std::min(n_a, n_b)) {
        throw Error(Errc::InvalidParams,
                    fmt::format("bipartite sizes ({}, {}) with {} blocks", n_a, n_b, blocks));
    }
    const auto block_of = [blocks](std::size_t local, std::size_t side_size) {
        return local * blocks / side_size;
    };
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n_a; ++i) {
        for (std::size_t j = 0; j < n_b; ++j) {
            const bool same = block_of(i, n_a) == block_of(j, n_b);
            if (coin(rng, same ? p_in : p_out)) {
                edges.push_back({i, n_a + j, 1.0});
            }
        }
    }
    return Graph::from_edges(n_a + n_b, Mode::Nonnegative, edges);
}

Graph
signed_balanced_graph(std::size_t n_a, std::size_t n_b, double p_in, double p_out, Rng& rng) {
    check_probability(p_in, "p_in");
    check_probability(p_out, "p_out");
    if (n_a == 0 || n_b == 0) {
        throw Error(Errc::InvalidParams, "both groups need at least one node");
    }
    const std::size_t n = n_a + n_b;
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool same = (i < n_a) == (j < n_a);
            if (coin(rng, same ? p_in : p_out)) {
                edges.push_back({i, j, same ? 1.0 : -1.0});
            }
        }
    }
    return Graph::from_edges(n, Mode::Signed, edges);
}

Graph
mixed_graph(std::size_t n_a, std::size_t n_b, double p_in, double p_out, Rng& rng) {
    check_probability(p_in, "p_in");
    check_probability(p_out, "p_out");
    if (n_a < 2 || n_b < 2) {
        throw Error(Errc::InvalidParams, "each side of a mixed graph needs at least two nodes");
    }
    const std::size_t n = n_a + n_b;
    const auto side = [n_a](std::size_t v) { return v < n_a ? 0 : 1; };
    const auto cluster = [n_a, n_b](std::size_t v) {
        return v < n_a ? (2 * v < n_a ? 0 : 1) : (2 * (v - n_a) < n_b ? 0 : 1);
    };
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool favoured = side(i) != side(j) && cluster(i) == cluster(j);
            if (coin(rng, favoured ? p_in : p_out)) {
                edges.push_back({i, j, 1.0});
            }
        }
    }
    return Graph::from_edges(n, Mode::Nonnegative, edges);
}

std::vector<Graph>
dynamic_sequence(std::size_t n, std::size_t length, double p, std::size_t clusters, double p_in,
                 double p_out, Rng& rng) {
    if (length < 3 || n < 2 * clusters || clusters == 0) {
        throw Error(Errc::InvalidParams,
                    fmt::format("dynamic sequence needs length >= 3 and n >= 2*clusters "
                                "(length {}, n {}, clusters {})",
                                length, n, clusters));
    }
    const Graph start = erdos_renyi(n, p, rng);
    const Graph middle = clustered_graph(even_split(n, clusters), p_in, p_out, rng);
    const Graph end = bipartite_graph(n / 2, n - n / 2, p_in, p_out, clusters, rng);

    // Anchor positions, 0-based: t_1 -> 0, t_{length/2} -> length/2 - 1,
    // t_length -> length - 1.
    const std::size_t mid_index = length / 2 - 1;
    const std::array<std::pair<std::size_t, const Graph*>, 2> targets{
        {{mid_index, &middle}, {length - 1, &end}}};

    std::vector<Graph> seq;
    seq.reserve(length);
    seq.push_back(start);
    EdgeSet current = edge_pairs(start);
    std::size_t k = 0;
    for (const auto& [anchor, target] : targets) {
        const EdgeSet goal = edge_pairs(*target);
        for (; k < anchor; ++k) {
            EdgeSet diff = symmetric_difference(current, goal);
            const std::size_t remaining = anchor - k;
            const std::size_t flips = (diff.size() + remaining - 1) / remaining;
            std::shuffle(diff.begin(), diff.end(), rng);
            diff.resize(flips);
            std::sort(diff.begin(), diff.end());
            EdgeSet next;
            std::set_symmetric_difference(current.begin(), current.end(), diff.begin(), diff.end(),
                                          std::back_inserter(next));
            current = std::move(next);
            seq.push_back(from_pairs(n, current));
        }
    }
    return seq;
}

Graph
karate_club() {
    std::vector<Edge> edges;
    edges.reserve(kKarateEdges.size());
    for (const auto& [i, j] : kKarateEdges) {
        edges.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), 1.0});
    }
    return Graph::from_edges(34, Mode::Nonnegative, edges);
}

std::vector<Graph>
generate(GraphKind kind, const GeneratorParams& params, std::uint64_t seed) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(kind)));
    // Without explicit sizes, n_nodes is split evenly.
    const auto two_sides = [&params]() -> std::pair<std::size_t, std::size_t> {
        if (params.sizes.empty()) {
            return {params.n_nodes / 2, params.n_nodes - params.n_nodes / 2};
        }
        if (params.sizes.size() != 2) {
            throw Error(Errc::InvalidParams, "this generator needs exactly two side sizes");
        }
        return {params.sizes[0], params.sizes[1]};
    };
    switch (kind) {
        case GraphKind::Clustered:
            return {clustered_graph(params.sizes.empty() ? even_split(params.n_nodes, params.clusters) : params.sizes,
                                    params.p_in, params.p_out, rng)};
        case GraphKind::Bipartite: {
            const auto [a, b] = two_sides();
            return {bipartite_graph(a, b, params.p_in, params.p_out, params.blocks, rng)};
        }
        case GraphKind::SignedBalanced: {
            const auto [a, b] = two_sides();
            return {signed_balanced_graph(a, b, params.p_in, params.p_out, rng)};
        }
        case GraphKind::ErdosRenyi:
            return {erdos_renyi(params.n_nodes, params.p, rng)};
        case GraphKind::DynamicSequence:
            return dynamic_sequence(params.n_nodes, params.length, params.p, params.clusters,
                                    params.p_in, params.p_out, rng);
        case GraphKind::Karate:
            return {karate_club()};
        case GraphKind::Mixed: {
            const auto [a, b] = two_sides();
            return {mixed_graph(a, b, params.p_in, params.p_out, rng)};
        }
    }
    throw Error(Errc::InvalidParams, "unknown graph kind");
}

}  // namespace deform_gsp
