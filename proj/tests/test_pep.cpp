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

#include "deform_gsp/error.hpp"
#include "deform_gsp/laplacian.hpp"
#include "deform_gsp/pep.hpp"
#include "oracles.hpp"

using namespace deform_gsp;
using Complex = std::complex<double>;

namespace {

Graph
binary(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> pairs, Mode mode = Mode::Nonnegative,
       double w = 1.0) {
    std::vector<Edge> edges;
    for (auto [i, j] : pairs) {
        edges.push_back({i, j, w});
    }
    return Graph::from_edges(n, mode, edges);
}

const Graph kP2 = binary(2, {{0, 1}});
const Graph kP3 = binary(3, {{0, 1}, {1, 2}});
const Graph kK3 = binary(3, {{0, 1}, {1, 2}, {0, 2}});

/// Every expected value is matched by a distinct computed value within tol.
void
check_multiset(std::vector<Complex> got, const std::vector<Complex>& expected, double tol) {
    REQUIRE(got.size() == expected.size());
    for (const Complex& e : expected) {
        auto best = got.end();
        double dist = std::numeric_limits<double>::infinity();
        for (auto it = got.begin(); it != got.end(); ++it) {
            if (std::abs(*it - e) < dist) {
                dist = std::abs(*it - e);
                best = it;
            }
        }
        CHECK(dist <= tol);
        got.erase(best);
    }
}

std::size_t
degree_one_count(const Graph& g) {
    std::size_t count = 0;
    const Vector d = degree_matrix(g).diagonal;
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        count += d(i) == 1.0 ? 1 : 0;
    }
    return count;
}

Graph
random_connected_binary(std::size_t n, Rng& rng) {
    while (true) {
        const Graph g = oracle::random_graph(n, 0.5, rng);
        if (oracle::component_count(g) == 1) {
            return g;
        }
    }
}

const Complex kOmega = std::polar(1.0, 2.0 * std::acos(-1.0) / 3.0);

}  // namespace

TEST_CASE("companion matrix examples") {
    const Matrix c = companion_matrix(kP2);
    CHECK(c == Matrix{{0, 0, 1, 0}, {0, 0, 0, 1}, {0, 0, 0, 1}, {0, 0, 1, 0}});

    // det(mu I - C) for P3 equals mu^4 (mu^2 - 1).
    const Matrix c3 = companion_matrix(kP3);
    for (double mu : {-2.0, -0.7, 0.3, 1.5, 2.5}) {
        const double det = (mu * Matrix::Identity(6, 6) - c3).determinant();
        CHECK(det == doctest::Approx(std::pow(mu, 4) * (mu * mu - 1.0)).epsilon(1e-12));
    }

    // K3: roots of (mu - 1)^2 (mu^2 + mu + 1)^2.
    const Eigen::VectorXcd mu = Eigen::EigenSolver<Matrix>(companion_matrix(kK3)).eigenvalues();
    std::vector<Complex> got(mu.data(), mu.data() + mu.size());
    check_multiset(got, {1.0, 1.0, kOmega, kOmega, std::conj(kOmega), std::conj(kOmega)}, 1e-7);
}

TEST_CASE("pep spectrum of P2") {
    const PepSpectrum s = pep_spectrum(kP2);
    check_multiset(s.finite_eigenvalues, {1.0, -1.0}, 1e-8);
    CHECK(s.infinite_multiplicity == 2);
    CHECK(s.infinite_geometric == 2);
}

TEST_CASE("pep spectrum of P3 has a defective infinite eigenvalue") {
    const PepSpectrum s = pep_spectrum(kP3);
    check_multiset(s.finite_eigenvalues, {1.0, -1.0}, 1e-8);
    CHECK(s.infinite_multiplicity == 4);
    CHECK(s.infinite_geometric == 2);
}

TEST_CASE("pep spectrum of K3") {
    const PepSpectrum s = pep_spectrum(kK3);
    check_multiset(s.finite_eigenvalues, {1.0, 1.0, kOmega, kOmega, std::conj(kOmega), std::conj(kOmega)}, 1e-8);
    CHECK(s.infinite_multiplicity == 0);
    CHECK(s.infinite_geometric == 0);
    for (const Complex& z : s.finite_eigenvalues) {
        CHECK(std::abs(z) == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("pep spectrum is sorted and conjugate-closed") {
    auto rng = make_rng(1, 0);
    for (int t = 0; t < 30; ++t) {
        const Graph g = oracle::random_graph(3 + static_cast<std::size_t>(t % 8), 0.4, rng);
        const PepSpectrum s = pep_spectrum(g);
        CHECK(s.finite_eigenvalues.size() + s.infinite_multiplicity == 2 * g.size());
        CHECK(s.infinite_geometric <= s.infinite_multiplicity);
        for (std::size_t k = 1; k < s.finite_eigenvalues.size(); ++k) {
            const Complex a = s.finite_eigenvalues[k - 1];
            const Complex b = s.finite_eigenvalues[k];
            CHECK((a.real() < b.real() || (a.real() == b.real() && a.imag() <= b.imag())));
        }
        for (const Complex& z : s.finite_eigenvalues) {
            double nearest = std::numeric_limits<double>::infinity();
            for (const Complex& w : s.finite_eigenvalues) {
                nearest = std::min(nearest, std::abs(std::conj(z) - w));
            }
            CHECK(nearest <= 1e-6);
        }
    }
}

TEST_CASE("no finite eigenvalue at zero and L_DF(0) is the identity") {
    auto rng = make_rng(2, 0);
    for (int t = 0; t < 100; ++t) {
        const Graph g = oracle::random_real_graph(2 + static_cast<std::size_t>(t % 11), 0.4, rng, Mode::Nonnegative);
        CHECK(deformed_laplacian(g, 0.0).entries == Matrix::Identity(static_cast<Eigen::Index>(g.size()),
                                                                     static_cast<Eigen::Index>(g.size())));
        for (const Complex& z : pep_spectrum(g).finite_eigenvalues) {
            CHECK(std::abs(z) > 1e-6);
        }
        CHECK_FALSE(structure_report(g).has_zero);
    }
}

TEST_CASE("multiplicity of eigenvalue 1 equals the number of components") {
    auto rng = make_rng(3, 0);
    for (int t = 0; t < 100; ++t) {
        const Graph g = oracle::random_real_graph(2 + static_cast<std::size_t>(t % 11), 0.2, rng, Mode::Nonnegative);
        CHECK(kernel_dimension(deformed_laplacian(g, 1.0).entries) == oracle::component_count(g));
        CHECK(structure_report(g).one_multiplicity == oracle::component_count(g));
    }
}

TEST_CASE("infinite eigenvalues come from degree-one vertices") {
    auto rng = make_rng(4, 0);
    int with_leaves = 0;
    for (int t = 0; t < 100; ++t) {
        const Graph g = oracle::random_graph(2 + static_cast<std::size_t>(t % 11), 0.3, rng);
        const PepSpectrum s = pep_spectrum(g);
        const std::size_t leaves = degree_one_count(g);
        CHECK(s.infinite_geometric == leaves);
        CHECK((s.infinite_multiplicity > 0) == (leaves > 0));
        with_leaves += leaves > 0 ? 1 : 0;
    }
    CHECK(with_leaves > 10);

    // Weighted: the condition is d_ii = 1, not degree one.
    const Graph w = Graph::from_edges(3, Mode::Nonnegative, std::vector<Edge>{{0, 1, 0.5}, {1, 2, 0.5}});
    const PepSpectrum s = pep_spectrum(w);
    CHECK(s.infinite_geometric == 1);
    CHECK(s.infinite_multiplicity >= 1);
}

TEST_CASE("eigenvalue -1 counts bipartite components") {
    auto rng = make_rng(5, 0);
    for (int t = 0; t < 100; ++t) {
        const Graph g = oracle::random_graph(2 + static_cast<std::size_t>(t % 11), t % 2 ? 0.2 : 0.35, rng);
        const std::size_t expected = oracle::exhaustive_component_count(g, false);
        const std::size_t mult = kernel_dimension(deformed_laplacian(g, -1.0).entries);
        CHECK(mult == expected);
        CHECK((mult > 0) == (expected > 0));
        const StructureReport r = structure_report(g);
        CHECK(r.minus_one_multiplicity == expected);
        CHECK(r.bipartite_components == expected);
    }
}

TEST_CASE("signless laplacian: smallest eigenvalue vanishes exactly on bipartite components") {
    auto rng = make_rng(6, 0);
    for (int t = 0; t < 100; ++t) {
        const Graph g = oracle::random_graph(2 + static_cast<std::size_t>(t % 11), 0.3, rng);
        const Vector ev = Eigen::SelfAdjointEigenSolver<Matrix>(signless_laplacian(g).entries).eigenvalues();
        std::size_t zeros = 0;
        for (Eigen::Index i = 0; i < ev.size(); ++i) {
            zeros += std::abs(ev(i)) <= 1e-8 ? 1 : 0;
        }
        const std::size_t expected = oracle::exhaustive_component_count(g, false);
        CHECK(zeros == expected);
        CHECK((std::abs(ev(0)) <= 1e-8) == (expected > 0));
    }
}

TEST_CASE("eigenvalue 1 of signed graphs counts balanced components") {
    auto rng = make_rng(7, 0);
    for (int t = 0; t < 100; ++t) {
        const Graph g = oracle::random_graph(2 + static_cast<std::size_t>(t % 11), 0.3, rng, Mode::Signed);
        const std::size_t expected = oracle::exhaustive_component_count(g, true);
        CHECK(kernel_dimension(deformed_laplacian(g, 1.0).entries) == expected);
        CHECK(structure_report(g).balanced_components == expected);
    }
}

TEST_CASE("finite eigenvalues of binary graphs lie in the closed unit disc") {
    auto rng = make_rng(8, 0);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const Graph g = oracle::random_graph(2 + static_cast<std::size_t>(t % 14), 0.35, rng);
        const double m = structure_report(g).max_finite_modulus;
        CHECK(m <= 1.0 + 1e-6);
        worst = std::max(worst, m);
    }
    // Modulus one is attained (for example by lambda = 1), so the bound is
    // not strict.
    CHECK(worst >= 1.0 - 1e-6);
}

TEST_CASE("structure report examples") {
    const StructureReport p2 = structure_report(kP2);
    CHECK(p2.has_one);
    CHECK(p2.one_multiplicity == 1);
    CHECK(p2.has_minus_one);
    CHECK(p2.minus_one_multiplicity == 1);
    CHECK(p2.bipartite_components == 1);
    CHECK_FALSE(p2.has_zero);

    const StructureReport k3 = structure_report(kK3);
    CHECK(k3.has_one);
    CHECK(k3.one_multiplicity == 1);
    CHECK_FALSE(k3.has_minus_one);
    CHECK(k3.max_finite_modulus == doctest::Approx(1.0).epsilon(1e-8));

    std::vector<Edge> edges;
    for (std::size_t i = 0; i < 20; ++i) {
        for (std::size_t j = i + 1; j < 20; ++j) {
            const bool same = (i < 10) == (j < 10);
            if (same || (i * 7 + j) % 4 == 0) {
                edges.push_back({i, j, same ? 1.0 : -1.0});
            }
        }
    }
    const StructureReport s = structure_report(Graph::from_edges(20, Mode::Signed, edges));
    CHECK(s.has_one);
    CHECK(s.balanced_components == 1);

    CHECK_THROWS_AS(structure_report(kP2, 0.0), Error);
    CHECK_THROWS_AS(pep_spectrum(kP2, -1.0), Error);
}

TEST_CASE("kernel dimension") {
    CHECK(kernel_dimension(Matrix::Zero(3, 3)) == 3);
    CHECK(kernel_dimension(Matrix::Identity(3, 3)) == 0);
    CHECK(kernel_dimension(Matrix{{1, 1}, {1, 1}}) == 1);
}

TEST_CASE("companion eigenvalues match interpolated determinant roots") {
    auto rng = make_rng(9, 0);
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(t % 5);
        const Graph g = random_connected_binary(n, rng);
        const PepSpectrum s = pep_spectrum(g);
        const std::vector<Complex> roots = oracle::det_polynomial_roots(g, true);
        CAPTURE(t);
        REQUIRE(roots.size() == s.finite_eigenvalues.size());
        const auto a = oracle::cluster_centroids(s.finite_eigenvalues, 1e-4);
        const auto b = oracle::cluster_centroids(roots, 1e-4);
        REQUIRE(a.size() == b.size());
        std::vector<Complex> ca;
        std::vector<Complex> cb;
        for (const auto& [c, m] : a) {
            ca.push_back(c);
        }
        for (const auto& [c, m] : b) {
            cb.push_back(c);
        }
        const double d = oracle::hausdorff(ca, cb);
        CHECK(d <= 1e-6);
        worst = std::max(worst, d);
        // Cluster multiplicities agree.
        for (const auto& [c, m] : a) {
            std::size_t other = 0;
            for (const auto& [c2, m2] : b) {
                if (std::abs(c - c2) <= 1e-6) {
                    other = m2;
                }
            }
            CHECK(other == m);
        }
    }
    MESSAGE("worst Hausdorff distance: " << worst);
}
