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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "deform_gsp/graph.hpp"
#include "deform_gsp/learner.hpp"
#include "deform_gsp/pep.hpp"
#include "deform_gsp/spectral.hpp"
#include "deform_gsp/types.hpp"

namespace deform_gsp::io {

using Json = nlohmann::ordered_json;

/// Shortest round-trip decimal form; negative zero prints as 0.
std::string
format_double(double x);

Json
graph_to_json(const Graph& g);

/// Dense real matrix from comma-separated rows. Blank lines are skipped and
/// a first line that does not parse as numbers is taken as a header.
Matrix
parse_matrix_csv(std::istream& in);

Matrix
read_matrix_csv(const std::filesystem::path& path);

void
write_matrix_csv(std::ostream& out, const Matrix& m);

Json
spectrum_to_json(const PepSpectrum& spectrum);

Json
structure_to_json(const StructureReport& report);

Json
basis_to_json(const SpectralBasis& basis);

Json
learn_result_to_json(const LearnResult& result);

/// Columns r, f, psd.
void
write_trace_csv(std::ostream& out, std::span<const TraceEntry> trace);

std::string
sha256_hex(std::string_view bytes);

std::string
sha256_file(const std::filesystem::path& path);

/// X(i, j) = log P(i, j + 1) - log P(i, j). Every price must be > 0.
Matrix
log_returns(const Matrix& prices);

/// Writes `contents` to `path`, creating parent directories.
void
write_text_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace deform_gsp::io
