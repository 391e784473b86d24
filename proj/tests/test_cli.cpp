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

#include <cmath>
#include <random>

#include "cli_harness.hpp"
#include "deform_gsp/io.hpp"

namespace fs = std::filesystem;
using cli_harness::run;
using Json = nlohmann::json;

namespace {

const std::string kKarate = std::string(DEFORM_GSP_DATA_DIR) + "/karate.csv";

fs::path
write(const fs::path& dir, const std::string& name, const std::string& contents) {
    deform_gsp::io::write_text_file(dir / name, contents);
    return dir / name;
}

Json
parse_single_line(const cli_harness::Result& r) {
    const auto ls = cli_harness::lines(r.out);
    REQUIRE(ls.size() == 1);
    REQUIRE(nlohmann::json::accept(ls[0]));
    return Json::parse(ls[0]);
}

std::vector<std::vector<double>>
read_csv_rows(const fs::path& path) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(cli_harness::read_file(path));
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::istringstream fields(line);
        std::string field;
        while (std::getline(fields, field, ',')) {
            row.push_back(std::stod(field));
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

TEST_CASE("learn on P2 recovers the signless form") {
    const fs::path dir = cli_harness::fresh_dir("learn_p2");
    const auto graph = write(dir, "p2.csv", "0,1,1\n");
    const auto signals = write(dir, "x.csv", "1\n-1\n");
    const auto r = run({"learn", "--graph", graph.string(), "--signals", signals.string(), "--gamma", "1", "--K", "1",
                        "--out", (dir / "out").string()});
    REQUIRE(r.code == 0);
    const Json j = parse_single_line(r);
    CHECK(j["command"] == "learn");
    CHECK(j["r_star"] == -1.0);
    CHECK(j["nmse"].get<double>() <= 1e-12);
    for (const char* f : {"result.json", "trace.csv", "reconstruction.csv", "coefficients.csv", "manifest.json"}) {
        CHECK(fs::exists(dir / "out" / f));
    }
    CHECK(cli_harness::read_file(dir / "out" / "trace.csv").rfind("r,f,psd\n", 0) == 0);
    const Json manifest = Json::parse(cli_harness::read_file(dir / "out" / "manifest.json"));
    CHECK(manifest["command"] == "learn");
    CHECK(manifest["inputs"][0]["sha256"] == deform_gsp::io::sha256_file(graph));
    CHECK(manifest["config"]["gamma"] == 1.0);
}

TEST_CASE("learn usage errors") {
    const fs::path dir = cli_harness::fresh_dir("learn_usage");
    const auto graph = write(dir, "p2.csv", "0,1,1\n");
    const auto signals = write(dir, "x.csv", "1\n-1\n");

    const auto missing = run({"learn", "--graph", graph.string(), "--gamma", "1", "--K", "1"});
    CHECK(missing.code == 2);
    CHECK(missing.err.find("--signals") != std::string::npos);

    const auto gamma =
        run({"learn", "--graph", graph.string(), "--signals", signals.string(), "--gamma", "1.5", "--K", "1"});
    CHECK(gamma.code == 2);
    CHECK(gamma.err.find("gamma must lie in [0,1]") != std::string::npos);

    const auto bad_k =
        run({"learn", "--graph", graph.string(), "--signals", signals.string(), "--gamma", "1", "--K", "3"});
    CHECK(bad_k.code == 2);

    const auto not_a_number =
        run({"learn", "--graph", graph.string(), "--signals", signals.string(), "--gamma", "abc", "--K", "1"});
    CHECK(not_a_number.code == 2);

    const auto no_file =
        run({"learn", "--graph", (dir / "missing.csv").string(), "--signals", signals.string(), "--gamma", "1",
             "--K", "1"});
    CHECK(no_file.code == 1);

    const auto bad_graph = write(dir, "bad.csv", "0,0,1\n");
    const auto self_loop =
        run({"learn", "--graph", bad_graph.string(), "--signals", signals.string(), "--gamma", "1", "--K", "1"});
    CHECK(self_loop.code == 1);
    CHECK(self_loop.err.find("error") != std::string::npos);

    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("spectrum examples") {
    const fs::path dir = cli_harness::fresh_dir("spectrum");
    const auto p2 = write(dir, "p2.csv", "0,1,1\n");
    const auto k3 = write(dir, "k3.csv", "0,1,1\n1,2,1\n0,2,1\n");

    const Json pep = parse_single_line(run({"spectrum", "--graph", p2.string(), "--pep"}));
    REQUIRE(pep["finite"].size() == 2);
    CHECK(pep["finite"][0][0].get<double>() == doctest::Approx(-1.0));
    CHECK(pep["finite"][1][0].get<double>() == doctest::Approx(1.0));
    CHECK(pep["infinite_algebraic"] == 2);

    const Json k3_pep = parse_single_line(run({"spectrum", "--graph", k3.string(), "--pep"}));
    CHECK(k3_pep["structure"]["max_finite_modulus"].get<double>() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(k3_pep["finite"].size() == 6);
    CHECK(k3_pep["infinite_algebraic"] == 0);

    const auto karate = run({"spectrum", "--graph", kKarate, "--r", "1", "--out", (dir / "karate").string()});
    REQUIRE(karate.code == 0);
    const Json kj = parse_single_line(karate);
    REQUIRE(kj["eigenvalues"].size() == 34);
    CHECK(std::abs(kj["eigenvalues"][0].get<double>()) <= 1e-10);
    CHECK(kj["psd"] == true);
    CHECK(fs::exists(dir / "karate" / "basis.json"));
    CHECK(fs::exists(dir / "karate" / "laplacian.csv"));

    CHECK(run({"spectrum", "--graph", p2.string()}).code == 2);
}

TEST_CASE("simulate examples") {
    const fs::path dir = cli_harness::fresh_dir("simulate");
    const auto p2 = write(dir, "p2.csv", "0,1,1\n");

    const auto exact = run({"simulate", "--graph", p2.string(), "--r", "1", "--phi0", "1,0", "--dt", "1", "--steps",
                            "40", "--method", "exact", "--out", (dir / "exact").string()});
    REQUIRE(exact.code == 0);
    const Json j = parse_single_line(exact);
    CHECK(j["final"][0].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(j["final"][1].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
    const auto rows = read_csv_rows(dir / "exact" / "trajectory.csv");
    CHECK(rows.size() == 41);
    CHECK(rows.back()[1] == doctest::Approx(0.5));

    const auto unstable = run({"simulate", "--graph", p2.string(), "--r", "0.5", "--phi0", "1,0", "--dt", "1.5",
                               "--steps", "3", "--method", "euler"});
    CHECK(unstable.code == 1);
    CHECK(unstable.err.find("lambda_max") != std::string::npos);

    const auto zero = run({"simulate", "--graph", p2.string(), "--r", "0.5", "--phi0", "1,0", "--dt", "0.1",
                           "--steps", "0", "--method", "euler", "--out", (dir / "zero").string()});
    REQUIRE(zero.code == 0);
    CHECK(cli_harness::read_file(dir / "zero" / "trajectory.csv") == "t,phi_0,phi_1\n0,1,0\n");

    const auto phi_file = write(dir, "phi.csv", "1\n0\n");
    CHECK(run({"simulate", "--graph", p2.string(), "--r", "1", "--phi0", phi_file.string(), "--dt", "0.1",
               "--steps", "2"})
              .code == 0);
    CHECK(run({"simulate", "--graph", p2.string(), "--r", "1", "--phi0", "1,0", "--dt", "0.1", "--steps", "2",
               "--method", "rk4"})
              .code == 2);
}

TEST_CASE("logreturns examples and round trip into learn") {
    const fs::path dir = cli_harness::fresh_dir("logreturns");
    const auto prices = write(dir, "p.csv", "1,2.718281828459045,20.085536923187668\n5,5,5\n");
    const auto r = run({"logreturns", "--prices", prices.string(), "--out", (dir / "out").string()});
    REQUIRE(r.code == 0);
    const Json j = parse_single_line(r);
    CHECK(j["rows"] == 2);
    CHECK(j["cols"] == 2);
    const deform_gsp::Matrix m = deform_gsp::io::read_matrix_csv(dir / "out" / "log_returns.csv");
    CHECK(m(0, 0) == doctest::Approx(1.0));
    CHECK(m(0, 1) == doctest::Approx(2.0));
    CHECK(m(1, 0) == 0.0);
    CHECK(m(1, 1) == 0.0);

    const auto zero = write(dir, "zero.csv", "1,2\n3,0\n");
    const auto bad = run({"logreturns", "--prices", zero.string(), "--out", (dir / "bad").string()});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("row 1, column 1") != std::string::npos);

    // 10 assets over 20 days, ring graph, straight into learn.
    std::mt19937_64 rng(5);
    std::normal_distribution<double> normal(0.0, 0.02);
    std::string price_csv;
    std::string ring;
    for (int i = 0; i < 10; ++i) {
        double p = 100.0 + i;
        for (int d = 0; d < 20; ++d) {
            price_csv += (d ? "," : "") + deform_gsp::io::format_double(p);
            p *= std::exp(normal(rng));
        }
        price_csv += '\n';
        ring += std::to_string(i) + "," + std::to_string((i + 1) % 10) + ",1\n";
    }
    const auto big = write(dir, "prices10x20.csv", price_csv);
    const auto graph = write(dir, "ring.csv", ring);
    REQUIRE(run({"logreturns", "--prices", big.string(), "--out", (dir / "big").string()}).code == 0);
    const auto learned = run({"learn", "--graph", graph.string(), "--signals", (dir / "big" / "log_returns.csv").string(),
                              "--gamma", "0.5", "--K", "3", "--out", (dir / "learned").string()});
    REQUIRE(learned.code == 0);
    const Json lj = parse_single_line(learned);
    CHECK(lj["r_star"].get<double>() >= -1.0);
    CHECK(lj["r_star"].get<double>() <= 1.0);
    CHECK(lj["nmse_per_signal_mean"].get<double>() >= 0.0);
    const deform_gsp::Matrix returns = deform_gsp::io::read_matrix_csv(dir / "big" / "log_returns.csv");
    CHECK(returns.rows() == 10);
    CHECK(returns.cols() == 19);
}

TEST_CASE("experiment presets are deterministic and emit JSON") {
    for (const char* preset : {"gamma-sweep", "dynamic-nmse", "nmse-vs-r", "nmse-vs-sparsity"}) {
        CAPTURE(preset);
        const fs::path a = cli_harness::fresh_dir(std::string("exp_a_") + preset);
        const fs::path b = cli_harness::fresh_dir(std::string("exp_b_") + preset);
        const auto ra = run({"experiment", preset, "--seed", "11", "--out", a.string()});
        const auto rb = run({"experiment", preset, "--seed", "11", "--out", b.string()});
        REQUIRE(ra.code == 0);
        REQUIRE(rb.code == 0);
        CHECK(cli_harness::all_lines_json(ra.out));
        CHECK(cli_harness::all_lines_json(rb.out));
        const auto da = cli_harness::digests(a);
        CHECK(da.count("manifest.json") == 1);
        CHECK(da == cli_harness::digests(b));

        const fs::path c = cli_harness::fresh_dir(std::string("exp_c_") + preset);
        REQUIRE(run({"experiment", preset, "--seed", "12", "--out", c.string()}).code == 0);
        CHECK(cli_harness::digests(c) != da);
    }
}

TEST_CASE("preset tables carry the expected trends") {
    const fs::path dir = cli_harness::fresh_dir("trends");
    REQUIRE(run({"experiment", "gamma-sweep", "--seed", "2", "--trials", "10", "--out", (dir / "g").string()}).code ==
            0);
    const auto gamma_rows = read_csv_rows(dir / "g" / "gamma_sweep.csv");
    CHECK(gamma_rows.size() == 11);
    for (const auto& row : gamma_rows) {
        CHECK(row[1] == -1.0);
    }

    REQUIRE(run({"experiment", "dynamic-nmse", "--seed", "2", "--length", "12", "--out", (dir / "d").string()})
                .code == 0);
    for (const auto& row : read_csv_rows(dir / "d" / "dynamic_nmse.csv")) {
        CHECK(row[1] <= std::min(row[2], row[3]) + 1e-12);
    }

    REQUIRE(run({"experiment", "nmse-vs-sparsity", "--seed", "2", "--out", (dir / "s").string()}).code == 0);
    const auto sparsity = read_csv_rows(dir / "s" / "nmse_vs_sparsity.csv");
    CHECK(sparsity.size() == 20);
    for (std::size_t k = 1; k < sparsity.size(); ++k) {
        CHECK(sparsity[k][2] <= sparsity[k - 1][2] + 1e-12);
    }
    CHECK(sparsity.back()[2] <= 1e-20);

    const auto r = run({"experiment", "nmse-vs-r", "--seed", "2", "--out", (dir / "r").string()});
    REQUIRE(r.code == 0);
    const Json j = parse_single_line(r);
    CHECK(std::abs(j["r_star"].get<double>() - 0.3) <= 0.05 + 1e-12);

    const auto unknown = run({"experiment", "fig-10", "--out", (dir / "u").string()});
    CHECK(unknown.code == 2);
    CHECK(unknown.err.find("unknown preset") != std::string::npos);
    CHECK(run({"experiment", "gamma-sweep", "--out", (dir / "k").string(), "--kind", "ring"}).code == 2);
}
