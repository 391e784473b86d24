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

#include "deform_gsp/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <queue>
#include <string>

#include <fmt/format.h>

#include "deform_gsp/error.hpp"

namespace deform_gsp {

std::string_view
to_string(Mode mode) noexcept {
    return mode == Mode::Signed ? "signed" : "nonnegative";
}

namespace {

void
check_weight(Mode mode, double w, std::size_t i, std::size_t j) {
    if (!std::isfinite(w)) {
        throw Error(Errc::InvalidParams, fmt::format("non-finite weight on edge ({}, {})", i, j));
    }
    if (mode == Mode::Nonnegative && w < 0.0) {
        throw Error(Errc::NegativeWeightInNonnegativeMode,
                    fmt::format("edge ({}, {}) has weight {}", i, j, w));
    }
}

// Colours every component by BFS. `edge_sign(i, j)` is the product the
// two endpoint labels must have on that edge. Returns false on a conflict.
template <class EdgeSign>
bool
signed_colouring(const Graph& g, EdgeSign edge_sign, std::vector<int>& labels,
                 std::vector<bool>* component_ok = nullptr,
                 const Components* comps = nullptr) {
    const std::size_t n = g.size();
    labels.assign(n, 0);
    bool ok = true;
    std::queue<std::size_t> frontier;
    for (std::size_t s = 0; s < n; ++s) {
        if (labels[s] != 0) {
            continue;
        }
        labels[s] = 1;
        frontier.push(s);
        while (!frontier.empty()) {
            const std::size_t u = frontier.front();
            frontier.pop();
            for (std::size_t v = 0; v < n; ++v) {
                if (v == u || !g.has_edge(u, v)) {
                    continue;
                }
                const int want = labels[u] * edge_sign(u, v);
                if (labels[v] == 0) {
                    labels[v] = want;
                    frontier.push(v);
                } else if (labels[v] != want) {
                    ok = false;
                    if (component_ok != nullptr && comps != nullptr) {
                        (*component_ok)[comps->labels[u]] = false;
                    }
                }
            }
        }
    }
    return ok;
}

int
weight_sign(const Graph& g, std::size_t i, std::size_t j) {
    return g.weight(i, j) < 0.0 ? -1 : 1;
}

std::string_view
trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <class T>
bool
parse_field(std::string_view s, T& out) {
    s = trim(s);
    if (s.empty()) {
        return false;
    }
    if (s.front() == '+') {
        s.remove_prefix(1);
    }
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

struct RawEdge {
    long long i;
    long long j;
    double w;
    std::size_t line;
};

std::vector<RawEdge>
read_raw_edges(std::istream& in) {
    std::vector<RawEdge> out;
    std::string line;
    std::size_t line_no = 0;
    bool first_content = true;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view view = trim(line);
        if (view.empty()) {
            continue;
        }
        std::vector<std::string_view> fields;
        std::size_t start = 0;
        while (true) {
            const auto comma = view.find(',', start);
            fields.push_back(view.substr(start, comma - start));
            if (comma == std::string_view::npos) {
                break;
            }
            start = comma + 1;
        }
        RawEdge e{0, 0, 0.0, line_no};
        const bool parsed = fields.size() == 3 && parse_field(fields[0], e.i) &&
                            parse_field(fields[1], e.j) && parse_field(fields[2], e.w) &&
                            std::isfinite(e.w);
        if (!parsed) {
            // Only a first line with no numeric field is taken as a header.
            const bool numeric = std::any_of(fields.begin(), fields.end(), [](std::string_view f) {
                double v = 0.0;
                return parse_field(f, v);
            });
            if (first_content && !numeric) {
                first_content = false;  // header line
                continue;
            }
            throw Error(Errc::MalformedLine,
                        fmt::format("line {}: expected \"i,j,w\", got \"{}\"", line_no, view));
        }
        first_content = false;
        out.push_back(e);
    }
    return out;
}

Graph
build_from_raw(const std::vector<RawEdge>& raw, std::size_t n_nodes, Mode mode) {
    std::vector<Edge> edges;
    edges.reserve(raw.size());
    for (const RawEdge& e : raw) {
        if (e.i < 0 || e.j < 0 || static_cast<std::size_t>(e.i) >= n_nodes ||
            static_cast<std::size_t>(e.j) >= n_nodes) {
            throw Error(Errc::IndexOutOfRange,
                        fmt::format("line {}: edge ({}, {}) outside [0, {})", e.line, e.i, e.j,
                                    n_nodes));
        }
        if (e.i == e.j) {
            throw Error(Errc::SelfLoop, fmt::format("line {}: self-loop on node {}", e.line, e.i));
        }
        if (mode == Mode::Nonnegative && e.w < 0.0) {
            throw Error(Errc::NegativeWeightInNonnegativeMode,
                        fmt::format("line {}: weight {} in nonnegative mode", e.line, e.w));
        }
        edges.push_back({static_cast<std::size_t>(e.i), static_cast<std::size_t>(e.j), e.w});
    }
    return Graph::from_edges(n_nodes, mode, edges);
}

}  // namespace

Graph
Graph::from_edges(std::size_t n_nodes, Mode mode, std::span<const Edge> edges) {
    if (n_nodes == 0) {
        throw Error(Errc::InvalidParams, "graph needs at least one node");
    }
    const auto n = static_cast<Eigen::Index>(n_nodes);
    Matrix w = Matrix::Zero(n, n);
    for (const Edge& e : edges) {
        if (e.i >= n_nodes || e.j >= n_nodes) {
            throw Error(Errc::IndexOutOfRange,
                        fmt::format("edge ({}, {}) outside [0, {})", e.i, e.j, n_nodes));
        }
        if (e.i == e.j) {
            throw Error(Errc::SelfLoop, fmt::format("self-loop on node {}", e.i));
        }
        check_weight(mode, e.w, e.i, e.j);
        const auto i = static_cast<Eigen::Index>(e.i);
        const auto j = static_cast<Eigen::Index>(e.j);
        w(i, j) = e.w;
        w(j, i) = e.w;
    }
    return Graph(std::move(w), mode);
}

Graph
Graph::from_matrix(Matrix weights, Mode mode) {
    if (weights.rows() == 0 || weights.rows() != weights.cols()) {
        throw Error(Errc::DimensionMismatch, "weight matrix must be square and non-empty");
    }
    const Eigen::Index n = weights.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
        if (weights(i, i) != 0.0) {
            throw Error(Errc::SelfLoop, fmt::format("nonzero diagonal at node {}", i));
        }
        for (Eigen::Index j = i + 1; j < n; ++j) {
            if (weights(i, j) != weights(j, i)) {
                throw Error(Errc::InvalidParams,
                            fmt::format("weight matrix not symmetric at ({}, {})", i, j));
            }
            check_weight(mode, weights(i, j), static_cast<std::size_t>(i),
                         static_cast<std::size_t>(j));
        }
    }
    return Graph(std::move(weights), mode);
}

std::vector<Edge>
Graph::edges() const {
    std::vector<Edge> out;
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (has_edge(i, j)) {
                out.push_back({i, j, weight(i, j)});
            }
        }
    }
    return out;
}

std::vector<std::size_t>
Graph::neighbors(std::size_t i) const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < size(); ++j) {
        if (j != i && has_edge(i, j)) {
            out.push_back(j);
        }
    }
    return out;
}

std::size_t
Graph::edge_count() const {
    std::size_t count = 0;
    for (std::size_t i = 0; i < size(); ++i) {
        for (std::size_t j = i + 1; j < size(); ++j) {
            count += has_edge(i, j) ? 1 : 0;
        }
    }
    return count;
}

DegreeMatrix
degree_matrix(const Graph& g) {
    if (g.mode() == Mode::Signed) {
        return {g.weights().cwiseAbs().rowwise().sum()};
    }
    return {g.weights().rowwise().sum()};
}

Components
connected_components(const Graph& g) {
    const std::size_t n = g.size();
    constexpr auto unset = static_cast<std::size_t>(-1);
    Components out;
    out.labels.assign(n, unset);
    std::queue<std::size_t> frontier;
    for (std::size_t s = 0; s < n; ++s) {
        if (out.labels[s] != unset) {
            continue;
        }
        const std::size_t id = out.count++;
        out.labels[s] = id;
        frontier.push(s);
        while (!frontier.empty()) {
            const std::size_t u = frontier.front();
            frontier.pop();
            for (std::size_t v = 0; v < n; ++v) {
                if (v != u && out.labels[v] == unset && g.has_edge(u, v)) {
                    out.labels[v] = id;
                    frontier.push(v);
                }
            }
        }
    }
    return out;
}

std::optional<Partition>
bipartition(const Graph& g) {
    if (g.mode() != Mode::Nonnegative) {
        throw Error(Errc::WrongMode, "bipartition requires a nonnegative graph");
    }
    Partition p;
    if (!signed_colouring(g, [](std::size_t, std::size_t) { return -1; }, p.labels)) {
        return std::nullopt;
    }
    return p;
}

std::optional<Partition>
balance_partition(const Graph& g) {
    if (g.mode() != Mode::Signed) {
        throw Error(Errc::WrongMode, "balance_partition requires a signed graph");
    }
    Partition p;
    const auto sign = [&g](std::size_t i, std::size_t j) { return weight_sign(g, i, j); };
    if (!signed_colouring(g, sign, p.labels)) {
        return std::nullopt;
    }
    return p;
}

std::size_t
bipartite_component_count(const Graph& g) {
    const Components comps = connected_components(g);
    std::vector<bool> ok(comps.count, true);
    std::vector<int> labels;
    signed_colouring(g, [](std::size_t, std::size_t) { return -1; }, labels, &ok, &comps);
    return static_cast<std::size_t>(std::count(ok.begin(), ok.end(), true));
}

std::size_t
balanced_component_count(const Graph& g) {
    const Components comps = connected_components(g);
    if (g.mode() == Mode::Nonnegative) {
        return comps.count;
    }
    std::vector<bool> ok(comps.count, true);
    std::vector<int> labels;
    const auto sign = [&g](std::size_t i, std::size_t j) { return weight_sign(g, i, j); };
    signed_colouring(g, sign, labels, &ok, &comps);
    return static_cast<std::size_t>(std::count(ok.begin(), ok.end(), true));
}

Graph
parse_edge_list(std::istream& in, std::size_t n_nodes, Mode mode) {
    return build_from_raw(read_raw_edges(in), n_nodes, mode);
}

Graph
parse_edge_list(std::istream& in, Mode mode) {
    const auto raw = read_raw_edges(in);
    long long max_index = -1;
    for (const RawEdge& e : raw) {
        max_index = std::max({max_index, e.i, e.j});
    }
    if (max_index < 0) {
        throw Error(Errc::InvalidParams, "edge list is empty; node count cannot be inferred");
    }
    return build_from_raw(raw, static_cast<std::size_t>(max_index) + 1, mode);
}

namespace {

std::ifstream
open_or_throw(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(Errc::Io, fmt::format("cannot open {}", path.string()));
    }
    return in;
}

}  // namespace

Graph
load_edge_list(const std::filesystem::path& path, std::size_t n_nodes, Mode mode) {
    auto in = open_or_throw(path);
    return parse_edge_list(in, n_nodes, mode);
}

Graph
load_edge_list(const std::filesystem::path& path, Mode mode) {
    auto in = open_or_throw(path);
    return parse_edge_list(in, mode);
}

void
write_edge_list(std::ostream& out, const Graph& g) {
    for (const Edge& e : g.edges()) {
        out << fmt::format("{},{},{}\n", e.i, e.j, e.w);
    }
}

}  // namespace deform_gsp
