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

#include "deform_gsp/error.hpp"

namespace deform_gsp {

std::string_view
to_string(Errc code) noexcept {
    switch (code) {
        case Errc::MalformedLine:
            return "MalformedLine";
        case Errc::SelfLoop:
            return "SelfLoop";
        case Errc::NegativeWeightInNonnegativeMode:
            return "NegativeWeightInNonnegativeMode";
        case Errc::IndexOutOfRange:
            return "IndexOutOfRange";
        case Errc::WrongMode:
            return "WrongMode";
        case Errc::InvalidParams:
            return "InvalidParams";
        case Errc::DimensionMismatch:
            return "DimensionMismatch";
        case Errc::ConvergenceFailure:
            return "ConvergenceFailure";
        case Errc::InvalidK:
            return "InvalidK";
        case Errc::ZeroReference:
            return "ZeroReference";
        case Errc::NoFeasiblePoint:
            return "NoFeasiblePoint";
        case Errc::UnstableStepSize:
            return "UnstableStepSize";
        case Errc::UnknownPreset:
            return "UnknownPreset";
        case Errc::NonpositivePrice:
            return "NonpositivePrice";
        case Errc::Io:
            return "Io";
    }
    return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {
}

}  // namespace deform_gsp
