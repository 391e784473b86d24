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

#include "presets.hpp"

#include <numeric>

#include "deform_gsp/error.hpp"
#include "deform_gsp/laplacian.hpp"
#include "deform_gsp/rng.hpp"
#include "deform_gsp/spectral.hpp"

namespace deform_gsp::presets {

namespace {

constexpr std::uint64_t kGraphStream = 0;
constexpr std::uint64_t kSignalStream = 1;
constexpr std::uint64_t kTrialStream = 2;

std::vector<std::size_t>
leading_support(std::size_t K) {
    std::vector<std::size_t> support(K);
    std::iota(support.begin(), support.end(), std::size_t{0});
    return support;
}

std::vector<std::size_t>
even_sizes(std::size_t n, std::size_t parts) {
    std::vector<std::size_t> sizes(parts, n / parts);
    for (std::size_t i = 0; i < n % parts; ++i) {
        ++sizes[i];
    }
    return sizes;
}

LearnConfig
config(std::size_t K, double step, double gamma) {
    LearnConfig cfg;
    cfg.K = K;
    cfg.step = step;
    cfg.gamma = gamma;
    return cfg;
}

}  // namespace

GammaSweepOutput
gamma_sweep(const GammaSweepSetup& setup) {
    Rng rng = make_rng(setup.seed, kGraphStream);
    const std::size_t half = setup.n_nodes / 2;
    double r0 = 1.0;
    Graph g = [&] {
        switch (setup.kind) {
            case GraphKind::Bipartite:
                r0 = -1.0;
                return bipartite_graph(half, setup.n_nodes - half, 0.5, 0.0, 3, rng);
            case GraphKind::Clustered:
                return clustered_graph(even_sizes(setup.n_nodes, 3), 0.5, 0.01, rng);
            default:
                throw Error(Errc::InvalidParams, "gamma-sweep supports bipartite and clustered graphs");
        }
    }();
    const SpectralBasis basis = eig_sym(deformed_laplacian(g, r0));
    const std::vector<std::size_t> support = leading_support(setup.K);
    const SignalGenerator generator = [&](Rng& r) { return bandlimited_signals(basis, support, 1, r); };

    std::vector<double> gammas;
    for (int i = 0; i <= 10; ++i) {
        gammas.push_back(static_cast<double>(i) / 10.0);
    }
    auto rows = deform_gsp::gamma_sweep(g, generator, gammas, setup.trials, config(setup.K, setup.step, 1.0),
                                        derive_seed(setup.seed, kTrialStream));
    return {std::move(g), std::move(rows)};
}

DynamicNmseOutput
dynamic_nmse(const DynamicNmseSetup& setup) {
    Rng graph_rng = make_rng(setup.seed, kGraphStream);
    std::vector<Graph> sequence = dynamic_sequence(setup.n_nodes, setup.length, 0.2, 3, 0.5, 0.01, graph_rng);
    Rng signal_rng = make_rng(setup.seed, kSignalStream);
    SignalMatrix X = gaussian_signals(setup.n_nodes, setup.signals, signal_rng);
    auto rows = dynamic_experiment(sequence, X, config(setup.K, setup.step, 1.0));
    return {std::move(sequence), std::move(X), std::move(rows)};
}

Graph
mixed_study_graph(std::size_t n_nodes, std::uint64_t seed) {
    Rng rng = make_rng(seed, kGraphStream);
    const std::size_t half = n_nodes / 2;
    return mixed_graph(half, n_nodes - half, 0.5, 0.05, rng);
}

NmseVsROutput
nmse_vs_r(const NmseVsRSetup& setup) {
    Graph g = mixed_study_graph(setup.n_nodes, setup.seed);
    const SpectralBasis truth = eig_sym(deformed_laplacian(g, setup.r0));
    Rng rng = make_rng(setup.seed, kSignalStream);
    const std::vector<std::size_t> support = leading_support(setup.K);
    SignalMatrix X = bandlimited_signals(truth, support, setup.signals, rng);

    const LearnConfig cfg = config(setup.K, setup.step, 1.0);
    const SpectralGrid grid = build_grid(g, cfg);
    std::vector<NmseVsRRow> rows;
    rows.reserve(grid.points.size());
    for (const GridPoint& p : grid.points) {
        const FixedRSolution fit = solve_fixed_r(p.basis, X, setup.K);
        SignalMatrix approx(X.rows(), X.cols());
        for (std::size_t i = 0; i < fit.coefficients.size(); ++i) {
            approx.col(static_cast<Eigen::Index>(i)) = idgft(p.basis, fit.coefficients[i]);
        }
        rows.push_back({p.r, p.psd, nmse(X, approx, NmseMode::PerSignalMean)});
    }
    const double r_star = learn(grid, X, cfg).r_star;
    return {std::move(g), std::move(X), std::move(rows), r_star};
}

SparsityOutput
nmse_vs_sparsity(const SparsitySetup& setup) {
    Graph g = setup.graph ? *setup.graph : mixed_study_graph(setup.n_nodes, setup.seed);
    SignalMatrix X;
    if (setup.signals) {
        X = *setup.signals;
    } else {
        Rng rng = make_rng(setup.seed, kSignalStream);
        X = gaussian_signals(g.size(), setup.n_signals, rng);
    }
    LearnConfig cfg = config(1, setup.step, 1.0);
    const SpectralGrid grid = build_grid(g, cfg);
    std::vector<SparsityRow> rows;
    for (std::size_t K = 1; K <= g.size(); ++K) {
        cfg.K = K;
        const LearnResult result = learn(grid, X, cfg);
        rows.push_back({K, result.r_star, nmse(X, result.reconstruction, NmseMode::Frobenius)});
    }
    return {std::move(g), std::move(X), std::move(rows)};
}

}  // namespace deform_gsp::presets
