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

#include "deform_gsp/io.hpp"

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <memory>
#include <ostream>
#include <sstream>
#include <vector>

#include <fmt/format.h>

#include "deform_gsp/error.hpp"

namespace deform_gsp::io {

namespace {

std::string_view
trim(std::string_view s) {
    const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && is_space(s.front())) {
        s.remove_prefix(1);
    }
    while (!s.empty() && is_space(s.back())) {
        s.remove_suffix(1);
    }
    return s;
}

bool
parse_row(std::string_view line, std::vector<double>& row) {
    row.clear();
    while (true) {
        const std::size_t comma = line.find(',');
        const std::string_view field = trim(line.substr(0, comma));
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
        if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size() ||
            !std::isfinite(value)) {
            return false;
        }
        row.push_back(value);
        if (comma == std::string_view::npos) {
            return true;
        }
        line.remove_prefix(comma + 1);
    }
}

double
clean(double x) {
    return x == 0.0 ? 0.0 : x;
}

Json
number(double x) {
    return Json(clean(x));
}

Json
coefficients_to_json(const SparseCoefficients& c) {
    Json values = Json::array();
    for (double v : c.values) {
        values.push_back(number(v));
    }
    return Json{{"support", c.support}, {"values", std::move(values)}};
}

}  // namespace

std::string
format_double(double x) {
    return fmt::format("{}", clean(x));
}

Json
graph_to_json(const Graph& g) {
    Json edges = Json::array();
    for (const Edge& e : g.edges()) {
        edges.push_back(Json::array({e.i, e.j, number(e.w)}));
    }
    return Json{{"n", g.size()}, {"mode", std::string(to_string(g.mode()))}, {"edges", std::move(edges)}};
}

Matrix
parse_matrix_csv(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::vector<double> row;
    std::string line;
    std::size_t line_no = 0;
    bool seen_content = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view content = trim(line);
        if (content.empty()) {
            continue;
        }
        const bool first = !seen_content;
        seen_content = true;
        if (!parse_row(content, row)) {
            if (first) {
                continue;  // header
            }
            throw Error(Errc::MalformedLine, fmt::format("line {}: expected comma-separated numbers", line_no));
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw Error(Errc::MalformedLine, fmt::format("line {}: expected {} columns, found {}", line_no,
                                                         rows.front().size(), row.size()));
        }
        rows.push_back(row);
    }
    if (rows.empty()) {
        throw Error(Errc::MalformedLine, "matrix CSV contains no data rows");
    }
    Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        }
    }
    return m;
}

Matrix
read_matrix_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(Errc::Io, fmt::format("cannot open {}", path.string()));
    }
    return parse_matrix_csv(in);
}

void
write_matrix_csv(std::ostream& out, const Matrix& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j > 0) {
                out << ',';
            }
            out << format_double(m(i, j));
        }
        out << '\n';
    }
}

Json
spectrum_to_json(const PepSpectrum& spectrum) {
    Json finite = Json::array();
    for (const auto& z : spectrum.finite_eigenvalues) {
        finite.push_back(Json::array({number(z.real()), number(z.imag())}));
    }
    return Json{{"finite", std::move(finite)},
                {"infinite_algebraic", spectrum.infinite_multiplicity},
                {"infinite_geometric", spectrum.infinite_geometric}};
}

Json
structure_to_json(const StructureReport& report) {
    return Json{{"has_one", report.has_one},
                {"one_multiplicity", report.one_multiplicity},
                {"has_minus_one", report.has_minus_one},
                {"minus_one_multiplicity", report.minus_one_multiplicity},
                {"has_zero", report.has_zero},
                {"bipartite_components", report.bipartite_components},
                {"balanced_components", report.balanced_components},
                {"max_finite_modulus", number(report.max_finite_modulus)}};
}

Json
basis_to_json(const SpectralBasis& basis) {
    Json values = Json::array();
    for (Eigen::Index k = 0; k < basis.eigenvalues.size(); ++k) {
        values.push_back(number(basis.eigenvalues(k)));
    }
    Json vectors = Json::array();
    for (Eigen::Index k = 0; k < basis.eigenvectors.cols(); ++k) {
        Json col = Json::array();
        for (Eigen::Index i = 0; i < basis.eigenvectors.rows(); ++i) {
            col.push_back(number(basis.eigenvectors(i, k)));
        }
        vectors.push_back(std::move(col));
    }
    Json out{{"eigenvalues", std::move(values)}, {"eigenvectors", std::move(vectors)}};
    if (basis.r) {
        out["r"] = number(*basis.r);
    }
    return out;
}

Json
learn_result_to_json(const LearnResult& result) {
    Json coefficients = Json::array();
    for (const SparseCoefficients& c : result.coefficients) {
        coefficients.push_back(coefficients_to_json(c));
    }
    Json trace = Json::array();
    for (const TraceEntry& e : result.objective_trace) {
        trace.push_back(Json{{"r", number(e.r)}, {"f", number(e.f)}, {"psd", e.psd}});
    }
    return Json{{"r_star", number(result.r_star)},
                {"f_min", number(result.f_min)},
                {"coefficients", std::move(coefficients)},
                {"trace", std::move(trace)}};
}

void
write_trace_csv(std::ostream& out, std::span<const TraceEntry> trace) {
    out << "r,f,psd\n";
    for (const TraceEntry& e : trace) {
        out << format_double(e.r) << ',' << format_double(e.f) << ',' << (e.psd ? 1 : 0) << '\n';
    }
}

std::string
sha256_hex(std::string_view bytes) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int length = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1) {
        throw Error(Errc::Io, "SHA-256 computation failed");
    }
    std::string hex;
    hex.reserve(2 * length);
    for (unsigned int i = 0; i < length; ++i) {
        hex += fmt::format("{:02x}", digest[i]);
    }
    return hex;
}

std::string
sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(Errc::Io, fmt::format("cannot open {}", path.string()));
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return sha256_hex(buffer.str());
}

Matrix
log_returns(const Matrix& prices) {
    if (prices.cols() < 2) {
        throw Error(Errc::InvalidParams, "log returns need at least two price columns");
    }
    for (Eigen::Index i = 0; i < prices.rows(); ++i) {
        for (Eigen::Index j = 0; j < prices.cols(); ++j) {
            if (!(prices(i, j) > 0.0)) {
                throw Error(Errc::NonpositivePrice,
                            fmt::format("price at row {}, column {} is {}", i, j, format_double(prices(i, j))));
            }
        }
    }
    const Matrix logs = prices.array().log().matrix();
    return logs.rightCols(logs.cols() - 1) - logs.leftCols(logs.cols() - 1);
}

void
write_text_file(const std::filesystem::path& path, std::string_view contents) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(Errc::Io, fmt::format("cannot write {}", path.string()));
    }
    out << contents;
    if (!out) {
        throw Error(Errc::Io, fmt::format("write to {} failed", path.string()));
    }
}

}  // namespace deform_gsp::io
