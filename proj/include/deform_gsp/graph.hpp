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
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "deform_gsp/types.hpp"

namespace deform_gsp {

enum class Mode { Nonnegative, Signed };

std::string_view to_string(Mode mode) noexcept;

struct Edge {
    std::size_t i;
    std::size_t j;
    double w;
};

/// Undirected weighted graph on nodes 0..N-1, stored as a dense symmetric
/// weight matrix with zero diagonal. An edge exists iff its weight is
/// nonzero. Nonnegative graphs never hold negative weights.
class Graph {
public:
    /// Duplicate pairs overwrite: the last occurrence wins.
    static Graph
    from_edges(std::size_t n_nodes, Mode mode, std::span<const Edge> edges);

    static Graph
    from_matrix(Matrix weights, Mode mode);

    std::size_t
    size() const noexcept {
        return static_cast<std::size_t>(weights_.rows());
    }

    Mode
    mode() const noexcept {
        return mode_;
    }

    const Matrix&
    weights() const noexcept {
        return weights_;
    }

    double
    weight(std::size_t i, std::size_t j) const {
        return weights_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }

    bool
    has_edge(std::size_t i, std::size_t j) const {
        return weight(i, j) != 0.0;
    }

    /// Edges with i < j, in row-major order.
    std::vector<Edge>
    edges() const;

    std::vector<std::size_t>
    neighbors(std::size_t i) const;

    std::size_t
    edge_count() const;

private:
    Graph(Matrix weights, Mode mode) : weights_(std::move(weights)), mode_(mode) {
    }

    Matrix weights_;
    Mode mode_;
};

struct DegreeMatrix {
    Vector diagonal;
};

/// Row sums of the weights; absolute values in Signed mode.
DegreeMatrix
degree_matrix(const Graph& g);

struct Partition {
    std::vector<int> labels;  // +1 / -1 per node
};

struct Components {
    std::size_t count = 0;
    std::vector<std::size_t> labels;
};

Components
connected_components(const Graph& g);

/// BFS 2-colouring. Requires a Nonnegative graph.
std::optional<Partition>
bipartition(const Graph& g);

/// Signed BFS colouring: l_i * l_j * sign(w_ij) > 0 on every edge.
/// Requires a Signed graph.
std::optional<Partition>
balance_partition(const Graph& g);

/// Connected components whose edge support is 2-colourable (either mode;
/// isolated nodes count).
std::size_t
bipartite_component_count(const Graph& g);

/// Connected components admitting a balanced signing. Every component of a
/// Nonnegative graph is balanced.
std::size_t
balanced_component_count(const Graph& g);

// Edge-list CSV: optional header, lines "i,j,w" with 0-based indices,
// LF or CRLF line endings.
Graph
parse_edge_list(std::istream& in, std::size_t n_nodes, Mode mode);

/// Node count taken as max index + 1.
Graph
parse_edge_list(std::istream& in, Mode mode);

Graph
load_edge_list(const std::filesystem::path& path, std::size_t n_nodes, Mode mode);

Graph
load_edge_list(const std::filesystem::path& path, Mode mode);

void
write_edge_list(std::ostream& out, const Graph& g);

}  // namespace deform_gsp
