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

#include <stdexcept>
#include <string>
#include <string_view>

namespace deform_gsp {

enum class Errc {
    MalformedLine,
    SelfLoop,
    NegativeWeightInNonnegativeMode,
    IndexOutOfRange,
    WrongMode,
    InvalidParams,
    DimensionMismatch,
    ConvergenceFailure,
    InvalidK,
    ZeroReference,
    NoFeasiblePoint,
    UnstableStepSize,
    UnknownPreset,
    NonpositivePrice,
    Io,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message);

    Errc
    code() const noexcept {
        return code_;
    }

private:
    Errc code_;
};

}  // namespace deform_gsp
