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

#include "deform_gsp/learner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "deform_gsp/error.hpp"
#include "deform_gsp/simd/kernels.hpp"
#include "parallel.hpp"

namespace deform_gsp {

namespace {

double
column_residual_sq(const SpectralBasis& basis, const SignalMatrix& X, Eigen::Index i,
                   const SparseCoefficients& c) {
    const Vector approx = idgft(basis, c);
    return simd::sum_sq_diff(column(X, i), as_span(approx));
}

void
check_signals(const SignalMatrix& X, std::size_t n_nodes) {
    if (static_cast<std::size_t>(X.rows()) != n_nodes) {
        throw Error(Errc::DimensionMismatch,
                    fmt::format("signals have {} rows, graph has {} nodes", X.rows(), n_nodes));
    }
    if (X.cols() == 0) {
        throw Error(Errc::InvalidParams, "no signals");
    }
    if (!X.allFinite()) {
        throw Error(Errc::InvalidParams, "signals contain non-finite entries");
    }
}

struct PointEvaluation {
    FixedRSolution solution;
    double f = 0.0;
};

PointEvaluation
evaluate_point(const GridPoint& point, const SignalMatrix& X, const LearnConfig& cfg) {
    PointEvaluation out;
    out.solution = solve_fixed_r(point.basis, X, cfg.K);
    const double smooth = cfg.gamma < 1.0 ? smoothness(point.laplacian, X) : 0.0;
    out.f = (1.0 - cfg.gamma) * smooth + cfg.gamma * out.solution.fit_error;
    return out;
}

// Per-signal NMSE of the best K-term approximation in a fixed basis.
double
sparse_nmse(const SpectralBasis& basis, const SignalMatrix& X, std::size_t K) {
    const FixedRSolution sol = solve_fixed_r(basis, X, K);
    SignalMatrix approx(X.rows(), X.cols());
    for (Eigen::Index i = 0; i < X.cols(); ++i) {
        approx.col(i) = idgft(basis, sol.coefficients[static_cast<std::size_t>(i)]);
    }
    return nmse(X, approx, NmseMode::PerSignalMean);
}

}  // namespace

GridMode
parse_grid_mode(std::string_view name) {
    if (name == "uniform") {
        return GridMode::Uniform;
    }
    if (name == "paper") {
        return GridMode::PaperAccelerating;
    }
    throw Error(Errc::InvalidParams, fmt::format("unknown grid mode \"{}\"", name));
}

void
validate(const LearnConfig& cfg, std::size_t n_nodes) {
    if (!(cfg.gamma >= 0.0 && cfg.gamma <= 1.0)) {
        throw Error(Errc::InvalidParams, "gamma must lie in [0,1]");
    }
    if (cfg.K < 1 || cfg.K > n_nodes) {
        throw Error(Errc::InvalidK, fmt::format("K = {} outside [1, {}]", cfg.K, n_nodes));
    }
    if (!std::isfinite(cfg.r_min) || !std::isfinite(cfg.r_max) || cfg.r_min > cfg.r_max) {
        throw Error(Errc::InvalidParams,
                    fmt::format("invalid r range [{}, {}]", cfg.r_min, cfg.r_max));
    }
    if (!(cfg.step > 0.0 && cfg.step < 1.0)) {
        throw Error(Errc::InvalidParams, "step must lie in (0,1)");
    }
    if (!(cfg.psd_tol >= 0.0)) {
        throw Error(Errc::InvalidParams, "psd_tol must be nonnegative");
    }
}

std::vector<double>
r_grid(const LearnConfig& cfg) {
    const double span = cfg.r_max - cfg.r_min;
    const double snap = 1e-9 * cfg.step;
    std::vector<double> out{cfg.r_min};
    if (span == 0.0) {
        return out;
    }
    if (cfg.grid == GridMode::Uniform) {
        const auto count = static_cast<std::size_t>(std::floor(span / cfg.step + 1e-9));
        for (std::size_t n = 1; n <= count; ++n) {
            out.push_back(cfg.r_min + static_cast<double>(n) * cfg.step);
        }
    } else {
        double r = cfg.r_min;
        for (std::size_t n = 1; r < cfg.r_max - snap; ++n) {
            r += static_cast<double>(n) * cfg.step;
            out.push_back(std::min(r, cfg.r_max));
        }
    }
    if (cfg.r_max - out.back() <= snap) {
        out.back() = cfg.r_max;
    } else {
        out.push_back(cfg.r_max);
    }
    return out;
}

SpectralGrid
build_grid(const Graph& g, const LearnConfig& cfg) {
    validate(cfg, g.size());
    const std::vector<double> rs = r_grid(cfg);
    SpectralGrid grid;
    grid.n_nodes = g.size();
    grid.points.resize(rs.size());
    detail::parallel_for(rs.size(), cfg.threads, [&](std::size_t k) {
        OperatorMatrix lap = deformed_laplacian(g, rs[k]);
        SpectralBasis basis = eig_sym(lap);
        const bool psd = basis.eigenvalues(0) >= psd_threshold(lap.entries, cfg.psd_tol);
        grid.points[k] = GridPoint{rs[k], std::move(lap), std::move(basis), psd};
    });
    return grid;
}

FixedRSolution
solve_fixed_r(const SpectralBasis& basis, const SignalMatrix& X, std::size_t K) {
    check_signals(X, basis.size());
    FixedRSolution out;
    out.coefficients.reserve(static_cast<std::size_t>(X.cols()));
    for (Eigen::Index i = 0; i < X.cols(); ++i) {
        SparseCoefficients c = topk_project(basis, column(X, i), K);
        out.fit_error += column_residual_sq(basis, X, i, c);
        out.coefficients.push_back(std::move(c));
    }
    return out;
}

FixedRSolution
solve_fixed_r(const Graph& g, const SignalMatrix& X, double r, std::size_t K) {
    return solve_fixed_r(eig_sym(deformed_laplacian(g, r)), X, K);
}

double
smoothness(const OperatorMatrix& laplacian, const SignalMatrix& X) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < X.cols(); ++i) {
        sum += quadratic_form(laplacian, column(X, i));
    }
    return sum;
}

double
objective(const Graph& g, const SignalMatrix& X, double r,
          std::span<const SparseCoefficients> coefficients, double gamma) {
    check_signals(X, g.size());
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw Error(Errc::InvalidParams, "gamma must lie in [0,1]");
    }
    if (coefficients.size() != static_cast<std::size_t>(X.cols())) {
        throw Error(Errc::DimensionMismatch,
                    fmt::format("{} coefficient vectors for {} signals", coefficients.size(),
                                X.cols()));
    }
    const OperatorMatrix lap = deformed_laplacian(g, r);
    const SpectralBasis basis = eig_sym(lap);
    double fit = 0.0;
    for (Eigen::Index i = 0; i < X.cols(); ++i) {
        fit += column_residual_sq(basis, X, i, coefficients[static_cast<std::size_t>(i)]);
    }
    return (1.0 - gamma) * smoothness(lap, X) + gamma * fit;
}

LearnResult
learn(const Graph& g, const SignalMatrix& X, const LearnConfig& cfg) {
    check_signals(X, g.size());
    return learn(build_grid(g, cfg), X, cfg);
}

LearnResult
learn(const SpectralGrid& grid, const SignalMatrix& X, const LearnConfig& cfg) {
    validate(cfg, grid.n_nodes);
    check_signals(X, grid.n_nodes);
    const std::size_t count = grid.points.size();
    std::vector<PointEvaluation> evals(count);
    detail::parallel_for(count, cfg.threads, [&](std::size_t k) {
        evals[k] = evaluate_point(grid.points[k], X, cfg);
    });

    LearnResult result;
    result.objective_trace.reserve(count);
    std::size_t best = count;
    for (std::size_t k = 0; k < count; ++k) {
        const GridPoint& point = grid.points[k];
        result.objective_trace.push_back({point.r, evals[k].f, point.psd});
        if (point.psd && (best == count || evals[k].f < evals[best].f)) {
            best = k;
        }
    }
    if (best == count) {
        throw Error(Errc::NoFeasiblePoint,
                    fmt::format("no PSD deformed Laplacian on the {} grid points in [{}, {}]",
                                count, cfg.r_min, cfg.r_max));
    }

    const GridPoint& chosen = grid.points[best];
    result.r_star = chosen.r;
    result.f_min = evals[best].f;
    result.basis = chosen.basis;
    result.coefficients = std::move(evals[best].solution.coefficients);
    result.reconstruction.resize(X.rows(), X.cols());
    for (Eigen::Index i = 0; i < X.cols(); ++i) {
        result.reconstruction.col(i) =
            idgft(result.basis, result.coefficients[static_cast<std::size_t>(i)]);
    }
    return result;
}

SignalMatrix
bandlimited_signals(const SpectralBasis& basis, std::span<const std::size_t> support,
                    std::size_t M, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    const auto n = static_cast<Eigen::Index>(basis.size());
    SignalMatrix X = SignalMatrix::Zero(n, static_cast<Eigen::Index>(M));
    for (Eigen::Index i = 0; i < X.cols(); ++i) {
        for (const std::size_t k : support) {
            if (k >= basis.size()) {
                throw Error(Errc::InvalidK, fmt::format("support index {} >= {}", k, n));
            }
            simd::axpy(normal(rng), column(basis.eigenvectors, static_cast<Eigen::Index>(k)),
                       column(X, i));
        }
    }
    return X;
}

SignalMatrix
gaussian_signals(std::size_t n, std::size_t M, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    SignalMatrix X(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(M));
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
        for (Eigen::Index i = 0; i < X.rows(); ++i) {
            X(i, j) = normal(rng);
        }
    }
    return X;
}

std::vector<GammaSweepRow>
gamma_sweep(const Graph& g, const SignalGenerator& signal_gen, std::span<const double> gammas,
            std::size_t trials, const LearnConfig& cfg, std::uint64_t seed) {
    if (trials == 0) {
        throw Error(Errc::InvalidParams, "trials must be at least 1");
    }
    for (const double gamma : gammas) {
        LearnConfig probe = cfg;
        probe.gamma = gamma;
        validate(probe, g.size());
    }
    const SpectralGrid grid = build_grid(g, cfg);
    std::vector<SignalMatrix> signals;
    signals.reserve(trials);
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng = make_rng(seed, t);
        signals.push_back(signal_gen(rng));
    }

    std::vector<GammaSweepRow> rows;
    rows.reserve(gammas.size());
    for (const double gamma : gammas) {
        LearnConfig run = cfg;
        run.gamma = gamma;
        double total = 0.0;
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (const SignalMatrix& X : signals) {
            const double r = learn(grid, X, run).r_star;
            total += r;
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        rows.push_back({gamma, total / static_cast<double>(trials), lo, hi});
    }
    return rows;
}

std::vector<DynamicRow>
dynamic_experiment(std::span<const Graph> sequence, const SignalMatrix& X,
                   const LearnConfig& cfg) {
    if (cfg.gamma != 1.0) {
        throw Error(Errc::InvalidParams, "dynamic_experiment runs with gamma = 1");
    }
    std::vector<DynamicRow> rows;
    rows.reserve(sequence.size());
    for (std::size_t t = 0; t < sequence.size(); ++t) {
        const Graph& g = sequence[t];
        check_signals(X, g.size());
        const SpectralGrid grid = build_grid(g, cfg);

        // The sweep includes both endpoints exactly, so the r = +-1 points
        // are taken from the same grid the learner searches.
        const auto fixed_index = [&grid](double r) -> std::ptrdiff_t {
            for (std::size_t k = 0; k < grid.points.size(); ++k) {
                if (grid.points[k].r == r) {
                    return static_cast<std::ptrdiff_t>(k);
                }
            }
            return -1;
        };
        const auto fixed_nmse = [&](double r) {
            const std::ptrdiff_t k = fixed_index(r);
            if (k >= 0) {
                const GridPoint& p = grid.points[static_cast<std::size_t>(k)];
                return p.psd ? sparse_nmse(p.basis, X, cfg.K)
                             : std::numeric_limits<double>::quiet_NaN();
            }
            const OperatorMatrix lap = deformed_laplacian(g, r);
            if (!is_psd(lap, cfg.psd_tol)) {
                return std::numeric_limits<double>::quiet_NaN();
            }
            return sparse_nmse(eig_sym(lap), X, cfg.K);
        };

        SignalMatrix approx(X.rows(), X.cols());
        double r_total = 0.0;
        for (Eigen::Index i = 0; i < X.cols(); ++i) {
            const LearnResult fit = learn(grid, X.col(i), cfg);
            approx.col(i) = fit.reconstruction.col(0);
            r_total += fit.r_star;
        }
        rows.push_back({t + 1, nmse(X, approx, NmseMode::PerSignalMean), fixed_nmse(1.0),
                        fixed_nmse(-1.0), r_total / static_cast<double>(X.cols())});
    }
    return rows;
}

}  // namespace deform_gsp
