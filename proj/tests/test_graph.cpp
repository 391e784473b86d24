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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "deform_gsp/error.hpp"
#include "deform_gsp/graph.hpp"
#include "deform_gsp/io.hpp"
#include "oracles.hpp"

using namespace deform_gsp;

namespace {

Graph
parse(const std::string& text, std::size_t n, Mode mode = Mode::Nonnegative) {
    std::istringstream in(text);
    return parse_edge_list(in, n, mode);
}

Errc
parse_error(const std::string& text, std::size_t n, Mode mode = Mode::Nonnegative) {
    try {
        parse(text, n, mode);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return Errc::Io;
}

Graph
path_graph(std::size_t n) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        edges.push_back({i, i + 1, 1.0});
    }
    return Graph::from_edges(n, Mode::Nonnegative, edges);
}

bool
valid_signing(const Graph& g, const Partition& p, bool balance) {
    for (const Edge& e : g.edges()) {
        const int s = balance ? (e.w > 0 ? 1 : -1) : -1;
        if (p.labels[e.i] * p.labels[e.j] * s <= 0) {
            return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("edge list: single edge gives P2") {
    const Graph g = parse("0,1,1.0\n", 2);
    CHECK(g.size() == 2);
    CHECK(g.weight(0, 1) == 1.0);
    CHECK(g.weight(1, 0) == 1.0);
    CHECK(g.weight(0, 0) == 0.0);
}

TEST_CASE("edge list: signed weight is kept in signed mode") {
    const Graph g = parse("0,1,-1.0\n", 2, Mode::Signed);
    CHECK(g.weight(0, 1) == -1.0);
    CHECK(g.mode() == Mode::Signed);
}

TEST_CASE("edge list: error kinds") {
    CHECK(parse_error("0,1,1\n0,0,1\n", 2) == Errc::SelfLoop);
    CHECK(parse_error("0,1,-1\n", 2) == Errc::NegativeWeightInNonnegativeMode);
    CHECK(parse_error("0,2,1\n", 2) == Errc::IndexOutOfRange);
    CHECK(parse_error("0,1,1\n0;1;1\n", 2) == Errc::MalformedLine);
    CHECK(parse_error("0,1\n", 2) == Errc::MalformedLine);
    CHECK(parse_error("0,1,1,4\n", 2) == Errc::MalformedLine);
    CHECK(parse_error("0,1,1\n-1,1,1\n", 2) == Errc::IndexOutOfRange);
    CHECK(parse_error("source,target,weight\n0,1,1\nx,y,z\n", 2) == Errc::MalformedLine);
    CHECK(parse_error("0,1,nan\n", 2) == Errc::MalformedLine);
}

TEST_CASE("edge list: error messages carry the line number") {
    try {
        parse("0,1,1\n1,2,1\n2,2,1\n", 3);
        FAIL("expected SelfLoop");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("edge list: header, CRLF, blank lines, duplicates") {
    const Graph g = parse("i,j,w\r\n0,1,2\r\n\r\n1,2, 3.5 \r\n0,1,4\r\n", 3);
    CHECK(g.weight(0, 1) == 4.0);  // last write wins
    CHECK(g.weight(1, 2) == 3.5);
    CHECK(g.edge_count() == 2);
}

TEST_CASE("edge list: node count inferred from the largest index") {
    std::istringstream in("0,4,1\n1,2,1\n");
    const Graph g = parse_edge_list(in, Mode::Nonnegative);
    CHECK(g.size() == 5);
}

TEST_CASE("edge list: zero weight removes an edge") {
    const Graph g = parse("0,1,1\n0,1,0\n", 2);
    CHECK_FALSE(g.has_edge(0, 1));
}

TEST_CASE("edge list: file round trip") {
    auto rng = make_rng(3, 0);
    const Graph g = oracle::random_real_graph(9, 0.4, rng, Mode::Signed);
    const auto path = std::filesystem::temp_directory_path() / "deform_gsp_graph_roundtrip.csv";
    {
        std::ofstream out(path);
        write_edge_list(out, g);
    }
    const Graph back = load_edge_list(path, g.size(), Mode::Signed);
    CHECK(back.weights() == g.weights());
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_edge_list(path, 3, Mode::Signed), Error);
}

TEST_CASE("graph json export") {
    const Graph g = parse("0,1,1.5\n1,2,1\n", 3);
    const auto j = io::graph_to_json(g);
    CHECK(j.dump() == R"({"n":3,"mode":"nonnegative","edges":[[0,1,1.5],[1,2,1.0]]})");
}

TEST_CASE("from_matrix rejects invalid matrices") {
    Matrix asym = Matrix::Zero(2, 2);
    asym(0, 1) = 1.0;
    CHECK_THROWS_AS(Graph::from_matrix(asym, Mode::Nonnegative), Error);
    Matrix diag = Matrix::Identity(2, 2);
    CHECK_THROWS_AS(Graph::from_matrix(diag, Mode::Nonnegative), Error);
    Matrix neg = Matrix::Zero(2, 2);
    neg(0, 1) = neg(1, 0) = -1.0;
    CHECK_THROWS_AS(Graph::from_matrix(neg, Mode::Nonnegative), Error);
    CHECK_NOTHROW(Graph::from_matrix(neg, Mode::Signed));
}

TEST_CASE("degree matrix examples") {
    CHECK(degree_matrix(path_graph(2)).diagonal == Vector::Ones(2));
    CHECK(degree_matrix(path_graph(3)).diagonal == Vector{{1.0, 2.0, 1.0}});
    CHECK(degree_matrix(parse("0,1,-1\n", 2, Mode::Signed)).diagonal == Vector::Ones(2));
}

TEST_CASE("connected components") {
    CHECK(connected_components(path_graph(2)).count == 1);
    const Graph two = parse("0,1,1\n2,3,1\n", 4);
    const Components c = connected_components(two);
    CHECK(c.count == 2);
    CHECK(c.labels[0] == c.labels[1]);
    CHECK(c.labels[2] == c.labels[3]);
    CHECK(c.labels[0] != c.labels[2]);
    CHECK(connected_components(parse("", 3)).count == 3);

    auto rng = make_rng(4, 0);
    for (int t = 0; t < 50; ++t) {
        const Graph g = oracle::random_graph(12, 0.12, rng);
        const Components got = connected_components(g);
        CHECK(got.count == oracle::component_count(g));
        for (std::size_t label : got.labels) {
            CHECK(label < got.count);
        }
    }
}

TEST_CASE("bipartition examples") {
    const auto p2 = bipartition(path_graph(2));
    REQUIRE(p2);
    CHECK(p2->labels == std::vector<int>{1, -1});
    CHECK_FALSE(bipartition(parse("0,1,1\n1,2,1\n0,2,1\n", 3)));
    CHECK_THROWS_AS(bipartition(parse("0,1,1\n", 2, Mode::Signed)), Error);

    // Women 0..4, events 5..8, attendance pattern.
    const Graph sw = parse("0,5,1\n0,6,1\n1,6,1\n1,7,1\n2,5,1\n2,8,1\n3,7,1\n4,8,1\n4,6,1\n", 9);
    const auto p = bipartition(sw);
    REQUIRE(p);
    CHECK(valid_signing(sw, *p, false));
    for (int w = 0; w < 5; ++w) {
        CHECK(p->labels[static_cast<std::size_t>(w)] == p->labels[0]);
    }
    for (int e = 5; e < 9; ++e) {
        CHECK(p->labels[static_cast<std::size_t>(e)] == -p->labels[0]);
    }
}

TEST_CASE("balance_partition examples") {
    const auto two = balance_partition(parse("0,1,-1\n", 2, Mode::Signed));
    REQUIRE(two);
    CHECK(two->labels == std::vector<int>{1, -1});
    CHECK_FALSE(balance_partition(parse("0,1,1\n1,2,1\n0,2,-1\n", 3, Mode::Signed)));
    CHECK_THROWS_AS(balance_partition(parse("0,1,1\n", 2)), Error);

    // Two positive 10-cliques joined only by negative edges.
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < 20; ++i) {
        for (std::size_t j = i + 1; j < 20; ++j) {
            const bool same = (i < 10) == (j < 10);
            if (same || (i + j) % 3 == 0) {
                edges.push_back({i, j, same ? 1.0 : -1.0});
            }
        }
    }
    const Graph g = Graph::from_edges(20, Mode::Signed, edges);
    const auto p = balance_partition(g);
    REQUIRE(p);
    CHECK(valid_signing(g, *p, true));
    for (std::size_t i = 0; i < 20; ++i) {
        CHECK(p->labels[i] == (i < 10 ? p->labels[0] : -p->labels[0]));
    }
}

TEST_CASE("bipartition agrees with exhaustive 2-colouring") {
    auto rng = make_rng(5, 0);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(t % 11);
        const Graph g = oracle::random_graph(n, t % 2 == 0 ? 0.2 : 0.35, rng);
        const auto p = bipartition(g);
        const bool expected = oracle::exhaustive_signing(g, oracle::all_nodes(g), false);
        CHECK(p.has_value() == expected);
        if (p) {
            CHECK(valid_signing(g, *p, false));
        }
        CHECK(bipartite_component_count(g) == oracle::exhaustive_component_count(g, false));
    }
}

TEST_CASE("balance_partition agrees with exhaustive signing") {
    auto rng = make_rng(6, 0);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(t % 11);
        const Graph g = oracle::random_graph(n, t % 2 == 0 ? 0.2 : 0.35, rng, Mode::Signed);
        const auto p = balance_partition(g);
        CHECK(p.has_value() == oracle::exhaustive_signing(g, oracle::all_nodes(g), true));
        if (p) {
            CHECK(valid_signing(g, *p, true));
        }
        CHECK(balanced_component_count(g) == oracle::exhaustive_component_count(g, true));
    }
}

TEST_CASE("edges and neighbours") {
    const Graph g = parse("2,0,1\n1,2,2\n", 3);
    const auto e = g.edges();
    REQUIRE(e.size() == 2);
    CHECK(e[0].i == 0);
    CHECK(e[0].j == 2);
    CHECK(g.neighbors(2) == std::vector<std::size_t>{0, 1});
}
