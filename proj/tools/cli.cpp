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

#include "cli.hpp"

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "deform_gsp/dynamics.hpp"
#include "deform_gsp/error.hpp"
#include "deform_gsp/generators.hpp"
#include "deform_gsp/graph.hpp"
#include "deform_gsp/io.hpp"
#include "deform_gsp/laplacian.hpp"
#include "deform_gsp/learner.hpp"
#include "deform_gsp/pep.hpp"
#include "deform_gsp/spectral.hpp"
#include "presets.hpp"

namespace deform_gsp::cli {

namespace {

namespace fs = std::filesystem;
using io::Json;

/// Bad flag values discovered after parsing; reported with exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Mode
parse_mode(const std::string& name) {
    if (name == "nonneg" || name == "nonnegative") {
        return Mode::Nonnegative;
    }
    if (name == "signed") {
        return Mode::Signed;
    }
    throw UsageError(fmt::format("--mode must be nonneg or signed, got \"{}\"", name));
}

unsigned
threads_from_env() {
    const char* raw = std::getenv("DEFORM_GSP_THREADS");
    if (raw == nullptr || *raw == '\0') {
        return 0;
    }
    const std::string_view text(raw);
    unsigned value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw UsageError(fmt::format("DEFORM_GSP_THREADS must be a nonnegative integer, got \"{}\"", text));
    }
    return value;
}

// Flags shared by every command that reads an edge list.
struct GraphFlags {
    std::string path;
    std::string mode = "nonneg";
    std::size_t nodes = 0;  // 0: infer from the largest index

    void
    add_to(CLI::App& cmd, bool required = true) {
        auto* opt = cmd.add_option("--graph", path, "Edge list CSV (i,j,w; 0-based)");
        if (required) {
            opt->required();
        }
        cmd.add_option("--mode", mode, "Weight mode: nonneg or signed")->capture_default_str();
        cmd.add_option("--nodes", nodes, "Node count (default: largest index + 1)");
    }

    Graph
    load() const {
        const Mode m = parse_mode(mode);
        return nodes > 0 ? load_edge_list(path, nodes, m) : load_edge_list(path, m);
    }
};

struct GridFlags {
    double r_min = -1.0;
    double r_max = 1.0;
    double step = 0.01;
    std::string grid = "uniform";

    void
    add_to(CLI::App& cmd) {
        cmd.add_option("--r-min", r_min, "Grid start")->capture_default_str();
        cmd.add_option("--r-max", r_max, "Grid end")->capture_default_str();
        cmd.add_option("--step", step, "Grid step beta")->capture_default_str();
        cmd.add_option("--grid", grid, "Grid mode: uniform or paper")->capture_default_str();
    }

    void
    apply(LearnConfig& cfg) const {
        cfg.r_min = r_min;
        cfg.r_max = r_max;
        cfg.step = step;
        try {
            cfg.grid = parse_grid_mode(grid);
        } catch (const Error& e) {
            throw UsageError(e.what());
        }
    }
};

Json
config_json(const LearnConfig& cfg) {
    return Json{{"gamma", cfg.gamma},
                {"K", cfg.K},
                {"r_min", cfg.r_min},
                {"r_max", cfg.r_max},
                {"step", cfg.step},
                {"psd_tol", cfg.psd_tol},
                {"grid", cfg.grid == GridMode::Uniform ? "uniform" : "paper"}};
}

/// Configuration checks that do not need the graph. Violations are usage
/// errors rather than computational ones.
void
check_config(const LearnConfig& cfg, std::optional<std::size_t> n_nodes = std::nullopt) {
    try {
        validate(cfg, n_nodes.value_or(std::numeric_limits<std::size_t>::max()));
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
}

struct OutputFile {
    std::string name;
    std::string contents;
};

/// Writes every output plus manifest.json into `dir`. The manifest holds
/// only content that is a function of the inputs, so reruns are
/// byte-identical.
void
write_run(const fs::path& dir, const std::string& command, const Json& config, std::uint64_t seed,
          const std::vector<std::string>& inputs, const std::vector<OutputFile>& outputs) {
    Json input_digests = Json::array();
    for (const std::string& path : inputs) {
        input_digests.push_back(Json{{"path", path}, {"sha256", io::sha256_file(path)}});
    }
    Json output_digests = Json::array();
    for (const OutputFile& file : outputs) {
        io::write_text_file(dir / file.name, file.contents);
        output_digests.push_back(Json{{"path", file.name}, {"sha256", io::sha256_hex(file.contents)}});
    }
    const Json manifest{{"command", command},
                        {"config", config},
                        {"seed", seed},
                        {"inputs", std::move(input_digests)},
                        {"outputs", std::move(output_digests)}};
    io::write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

template <typename Fn>
std::string
render(Fn&& fn) {
    std::ostringstream s;
    fn(s);
    return s.str();
}

std::string
matrix_csv(const Matrix& m) {
    return render([&](std::ostream& s) { io::write_matrix_csv(s, m); });
}

Json
vector_json(const Vector& v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(v(i) == 0.0 ? 0.0 : v(i));
    }
    return out;
}

/// --phi0 accepts a CSV file path or an inline list such as "1,0".
Vector
read_vector(const std::string& arg) {
    Matrix m;
    if (fs::exists(arg)) {
        m = io::read_matrix_csv(arg);
    } else {
        std::istringstream in(arg);
        m = io::parse_matrix_csv(in);
    }
    if (m.rows() != 1 && m.cols() != 1) {
        throw Error(Errc::DimensionMismatch,
                    fmt::format("initial state must be a single row or column, got {}x{}", m.rows(), m.cols()));
    }
    return Eigen::Map<const Vector>(m.data(), m.size());
}

// ---------------------------------------------------------------- learn

struct LearnCmd {
    GraphFlags graph;
    GridFlags grid;
    std::string signals;
    double gamma = 1.0;
    std::size_t K = 1;
    std::string out;
    std::uint64_t seed = 0;

    void
    add_to(CLI::App& cmd) {
        graph.add_to(cmd);
        grid.add_to(cmd);
        cmd.add_option("--signals", signals, "Signal matrix CSV, N rows by M columns")->required();
        cmd.add_option("--gamma", gamma, "Trade-off between smoothness and fit, in [0,1]")->required();
        cmd.add_option("--K", K, "Sparsity level")->required();
        cmd.add_option("--out", out, "Output directory");
        cmd.add_option("--seed", seed, "Seed recorded in the manifest");
    }

    int
    run(std::ostream& stdout_) const {
        LearnConfig cfg;
        cfg.gamma = gamma;
        cfg.K = K;
        grid.apply(cfg);
        cfg.threads = threads_from_env();
        check_config(cfg);

        const Graph g = graph.load();
        check_config(cfg, g.size());
        const SignalMatrix X = io::read_matrix_csv(signals);
        const LearnResult result = learn(g, X, cfg);
        const double err = nmse(X, result.reconstruction, NmseMode::Frobenius);

        if (!out.empty()) {
            write_run(out, "learn", config_json(cfg), seed, {graph.path, signals},
                      {{"result.json", io::learn_result_to_json(result).dump(2) + "\n"},
                       {"trace.csv", render([&](std::ostream& s) { io::write_trace_csv(s, result.objective_trace); })},
                       {"reconstruction.csv", matrix_csv(result.reconstruction)},
                       {"coefficients.csv",
                        render([&](std::ostream& s) { write_coefficients_csv(s, result.coefficients); })}});
        }
        stdout_ << Json{{"command", "learn"},
                        {"r_star", result.r_star},
                        {"f_min", result.f_min},
                        {"nmse", err},
                        {"nmse_per_signal_mean", nmse(X, result.reconstruction, NmseMode::PerSignalMean)}}
                       .dump()
                << '\n';
        return kExitOk;
    }
};

// ------------------------------------------------------------- spectrum

struct SpectrumCmd {
    GraphFlags graph;
    std::optional<double> r;
    bool pep = false;
    double tol = kDefaultZeroTol;
    std::string out;

    void
    add_to(CLI::App& cmd) {
        graph.add_to(cmd);
        cmd.add_option("--r", r, "Eigendecompose L_DF(r)");
        cmd.add_flag("--pep", pep, "Solve the quadratic eigenvalue problem det L_DF(lambda) = 0");
        cmd.add_option("--tol", tol, "Rank and zero tolerance for --pep")->capture_default_str();
        cmd.add_option("--out", out, "Output directory");
    }

    int
    run(std::ostream& stdout_) const {
        if (!r && !pep) {
            throw UsageError("spectrum needs --r <value> or --pep");
        }
        if (!(tol > 0.0)) {
            throw UsageError("--tol must be positive");
        }
        const Graph g = graph.load();
        Json line{{"command", "spectrum"}, {"n", g.size()}};
        std::vector<OutputFile> files;
        if (r) {
            const OperatorMatrix lap = deformed_laplacian(g, *r);
            const SpectralBasis basis = eig_sym(lap);
            line["r"] = *r;
            line["psd"] = basis.eigenvalues(0) >= psd_threshold(lap.entries, kDefaultPsdTol);
            line["eigenvalues"] = vector_json(basis.eigenvalues);
            files.push_back({"basis.json", io::basis_to_json(basis).dump(2) + "\n"});
            files.push_back({"laplacian.csv", matrix_csv(lap.entries)});
        }
        if (pep) {
            const Json spectrum = io::spectrum_to_json(pep_spectrum(g, tol));
            const Json structure = io::structure_to_json(structure_report(g, tol));
            for (const auto& [key, value] : spectrum.items()) {
                line[key] = value;
            }
            line["structure"] = structure;
            files.push_back({"spectrum.json", Json{{"spectrum", spectrum}, {"structure", structure}}.dump(2) + "\n"});
        }
        if (!out.empty()) {
            Json config{{"pep", pep}, {"tol", tol}};
            if (r) {
                config["r"] = *r;
            }
            write_run(out, "spectrum", config, 0, {graph.path}, files);
        }
        stdout_ << line.dump() << '\n';
        return kExitOk;
    }
};

// ------------------------------------------------------------- simulate

struct SimulateCmd {
    GraphFlags graph;
    double r = 1.0;
    std::string phi0;
    double dt = 0.01;
    std::size_t steps = 0;
    std::string method = "exact";
    double eta = 1.0;
    std::string out;

    void
    add_to(CLI::App& cmd) {
        graph.add_to(cmd);
        cmd.add_option("--r", r, "Deformation parameter")->required();
        cmd.add_option("--phi0", phi0, "Initial state: CSV file or inline list like \"1,0\"")->required();
        cmd.add_option("--dt", dt, "Time step")->required();
        cmd.add_option("--steps", steps, "Number of steps")->required();
        cmd.add_option("--method", method, "Integrator: euler or exact")->capture_default_str();
        cmd.add_option("--eta", eta, "Diffusion coefficient")->capture_default_str();
        cmd.add_option("--out", out, "Output directory for trajectory.csv");
    }

    int
    run(std::ostream& stdout_) const {
        Integrator integrator{};
        try {
            integrator = parse_integrator(method);
        } catch (const Error& e) {
            throw UsageError(e.what());
        }
        const Graph g = graph.load();
        const Vector phi = read_vector(phi0);
        const std::vector<DynamicsState> trajectory =
            simulate(g, r, as_span(phi), dt, steps, integrator, eta);
        if (!out.empty()) {
            std::vector<std::string> inputs{graph.path};
            if (fs::exists(phi0)) {
                inputs.push_back(phi0);
            }
            write_run(out, "simulate",
                      Json{{"r", r}, {"dt", dt}, {"steps", steps}, {"method", method}, {"eta", eta}}, 0,
                      inputs,
                      {{"trajectory.csv",
                        render([&](std::ostream& s) { write_trajectory_csv(s, trajectory); })}});
        }
        const DynamicsState& last = trajectory.back();
        stdout_ << Json{{"command", "simulate"},
                        {"steps", steps},
                        {"t_final", last.time},
                        {"final", vector_json(last.phi)}}
                       .dump()
                << '\n';
        return kExitOk;
    }
};

// ----------------------------------------------------------- logreturns

struct LogReturnsCmd {
    std::string prices;
    std::string out;

    void
    add_to(CLI::App& cmd) {
        cmd.add_option("--prices", prices, "Price matrix CSV, N assets by Q days, strictly positive")->required();
        cmd.add_option("--out", out, "Output directory for log_returns.csv")->required();
    }

    int
    run(std::ostream& stdout_) const {
        const Matrix X = io::log_returns(io::read_matrix_csv(prices));
        write_run(out, "logreturns", Json::object(), 0, {prices}, {{"log_returns.csv", matrix_csv(X)}});
        stdout_ << Json{{"command", "logreturns"},
                        {"rows", X.rows()},
                        {"cols", X.cols()},
                        {"output", (fs::path(out) / "log_returns.csv").string()}}
                       .dump()
                << '\n';
        return kExitOk;
    }
};

// ----------------------------------------------------------- experiment

struct ExperimentCmd {
    std::string preset;
    std::uint64_t seed = 1;
    std::string out;
    std::optional<std::size_t> trials;
    std::optional<std::size_t> signals_count;
    std::optional<std::size_t> length;
    std::optional<std::size_t> K;
    std::optional<double> step;
    std::optional<double> r0;
    std::string kind = "bipartite";
    GraphFlags graph;
    std::string signals;

    void
    add_to(CLI::App& cmd) {
        cmd.add_option("preset", preset, "gamma-sweep, dynamic-nmse, nmse-vs-r or nmse-vs-sparsity")->required();
        cmd.add_option("--seed", seed, "Root seed")->capture_default_str();
        cmd.add_option("--out", out, "Output directory")->required();
        cmd.add_option("--trials", trials, "Signal realisations per gamma (gamma-sweep)");
        cmd.add_option("--signals-count", signals_count, "Signals per experiment");
        cmd.add_option("--length", length, "Sequence length (dynamic-nmse)");
        cmd.add_option("--K", K, "Sparsity level");
        cmd.add_option("--step", step, "Grid step beta");
        cmd.add_option("--r0", r0, "Generating parameter (nmse-vs-r)");
        cmd.add_option("--kind", kind, "Graph for gamma-sweep: bipartite or clustered")->capture_default_str();
        graph.add_to(cmd, false);
        cmd.add_option("--signals", signals, "Signal matrix CSV (nmse-vs-sparsity)");
    }

    int
    run(std::ostream& stdout_) const {
        // --nodes sizes the generated graphs.
        const auto sized = [this](std::size_t fallback) { return graph.nodes > 0 ? graph.nodes : fallback; };
        std::vector<OutputFile> files;
        Json config;
        std::vector<std::string> inputs;
        std::size_t rows = 0;
        Json summary = Json::object();

        if (preset == "gamma-sweep") {
            presets::GammaSweepSetup s;
            if (kind == "bipartite") {
                s.kind = GraphKind::Bipartite;
            } else if (kind == "clustered") {
                s.kind = GraphKind::Clustered;
            } else {
                throw UsageError(fmt::format("--kind must be bipartite or clustered, got \"{}\"", kind));
            }
            s.n_nodes = sized(s.n_nodes);
            s.trials = trials.value_or(s.trials);
            s.K = K.value_or(s.K);
            s.step = step.value_or(s.step);
            s.seed = seed;
            const presets::GammaSweepOutput result = presets::gamma_sweep(s);
            files.push_back({"graph.json", io::graph_to_json(result.graph).dump() + "\n"});
            files.push_back({"gamma_sweep.csv", render([&](std::ostream& o) {
                                 o << "gamma,mean_r_star,min_r_star,max_r_star\n";
                                 for (const GammaSweepRow& row : result.rows) {
                                     o << io::format_double(row.gamma) << ',' << io::format_double(row.mean_r_star)
                                       << ',' << io::format_double(row.min_r_star) << ','
                                       << io::format_double(row.max_r_star) << '\n';
                                 }
                             })});
            config = Json{{"kind", kind}, {"n", s.n_nodes}, {"trials", s.trials}, {"K", s.K}, {"step", s.step}};
            rows = result.rows.size();
        } else if (preset == "dynamic-nmse") {
            presets::DynamicNmseSetup s;
            s.n_nodes = sized(s.n_nodes);
            s.length = length.value_or(s.length);
            s.signals = signals_count.value_or(s.signals);
            s.K = K.value_or(s.K);
            s.step = step.value_or(s.step);
            s.seed = seed;
            const presets::DynamicNmseOutput result = presets::dynamic_nmse(s);
            files.push_back({"dynamic_nmse.csv", render([&](std::ostream& o) {
                                 o << "t,nmse_deformed,nmse_r1,nmse_rminus1,mean_r_star\n";
                                 for (const DynamicRow& row : result.rows) {
                                     o << row.t << ',' << io::format_double(row.nmse_deformed) << ','
                                       << io::format_double(row.nmse_r1) << ','
                                       << io::format_double(row.nmse_rminus1) << ','
                                       << io::format_double(row.mean_r_star) << '\n';
                                 }
                             })});
            config = Json{{"n", s.n_nodes}, {"length", s.length}, {"signals", s.signals}, {"K", s.K}, {"step", s.step}};
            rows = result.rows.size();
        } else if (preset == "nmse-vs-r") {
            presets::NmseVsRSetup s;
            s.n_nodes = sized(s.n_nodes);
            s.signals = signals_count.value_or(s.signals);
            s.K = K.value_or(s.K);
            s.r0 = r0.value_or(s.r0);
            s.step = step.value_or(s.step);
            s.seed = seed;
            const presets::NmseVsROutput result = presets::nmse_vs_r(s);
            files.push_back({"graph.json", io::graph_to_json(result.graph).dump() + "\n"});
            files.push_back({"nmse_vs_r.csv", render([&](std::ostream& o) {
                                 o << "r,psd,nmse\n";
                                 for (const presets::NmseVsRRow& row : result.rows) {
                                     o << io::format_double(row.r) << ',' << (row.psd ? 1 : 0) << ','
                                       << io::format_double(row.nmse) << '\n';
                                 }
                             })});
            config = Json{{"n", s.n_nodes}, {"signals", s.signals}, {"K", s.K}, {"r0", s.r0}, {"step", s.step}};
            summary["r_star"] = result.r_star;
            rows = result.rows.size();
        } else if (preset == "nmse-vs-sparsity") {
            presets::SparsitySetup s;
            if (!graph.path.empty()) {
                s.graph = graph.load();
                inputs.push_back(graph.path);
            }
            if (!signals.empty()) {
                s.signals = io::read_matrix_csv(signals);
                inputs.push_back(signals);
            }
            s.n_nodes = sized(s.n_nodes);
            s.n_signals = signals_count.value_or(s.n_signals);
            s.step = step.value_or(s.step);
            s.seed = seed;
            const presets::SparsityOutput result = presets::nmse_vs_sparsity(s);
            files.push_back({"nmse_vs_sparsity.csv", render([&](std::ostream& o) {
                                 o << "K,r_star,nmse\n";
                                 for (const presets::SparsityRow& row : result.rows) {
                                     o << row.K << ',' << io::format_double(row.r_star) << ','
                                       << io::format_double(row.nmse) << '\n';
                                 }
                             })});
            config = Json{{"n", result.graph.size()}, {"signals", result.signals.cols()}, {"step", s.step}};
            rows = result.rows.size();
        } else {
            throw Error(Errc::UnknownPreset,
                        fmt::format("unknown preset \"{}\"; expected gamma-sweep, dynamic-nmse, nmse-vs-r or "
                                    "nmse-vs-sparsity",
                                    preset));
        }

        write_run(out, "experiment " + preset, config, seed, inputs, files);
        Json outputs = Json::array();
        for (const OutputFile& f : files) {
            outputs.push_back((fs::path(out) / f.name).string());
        }
        Json line{{"command", "experiment"},
                  {"preset", preset},
                  {"seed", seed},
                  {"rows", rows},
                  {"outputs", std::move(outputs)}};
        line.update(summary);
        stdout_ << line.dump() << '\n';
        return kExitOk;
    }
};

}  // namespace

int
run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Deformed graph Laplacian toolkit", "deform-gsp"};
    app.require_subcommand(1);

    LearnCmd learn_cmd;
    SpectrumCmd spectrum_cmd;
    SimulateCmd simulate_cmd;
    LogReturnsCmd logreturns_cmd;
    ExperimentCmd experiment_cmd;

    auto* learn_app = app.add_subcommand("learn", "Jointly learn r* and K-sparse spectral representations");
    learn_cmd.add_to(*learn_app);
    auto* spectrum_app = app.add_subcommand("spectrum", "Eigen-decomposition of L_DF(r) or its polynomial spectrum");
    spectrum_cmd.add_to(*spectrum_app);
    auto* simulate_app = app.add_subcommand("simulate", "Integrate d phi/dt = -L_DF(r) phi");
    simulate_cmd.add_to(*simulate_app);
    auto* logreturns_app = app.add_subcommand("logreturns", "Log-return signal matrix from prices");
    logreturns_cmd.add_to(*logreturns_app);
    auto* experiment_app = app.add_subcommand("experiment", "Run an experiment preset and emit its tables");
    experiment_cmd.add_to(*experiment_app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (learn_app->parsed()) {
            return learn_cmd.run(out);
        }
        if (spectrum_app->parsed()) {
            return spectrum_cmd.run(out);
        }
        if (simulate_app->parsed()) {
            return simulate_cmd.run(out);
        }
        if (logreturns_app->parsed()) {
            return logreturns_cmd.run(out);
        }
        return experiment_cmd.run(out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.code() == Errc::UnknownPreset ? kExitUsage : kExitCompute;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitCompute;
    }
}

}  // namespace deform_gsp::cli
