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

#include <cassert>
#include <cstdlib>
#include <string_view>

#include "deform_gsp/simd/kernels.hpp"

namespace deform_gsp::simd {

namespace {

constexpr KernelTable kGenericTable{
    &generic::dot,
    &generic::axpy,
    &generic::scale,
    &generic::sum_sq_diff,
};

#if defined(DEFORM_GSP_HAVE_AVX2)
constexpr KernelTable kAvx2Table{
    &avx2::dot,
    &avx2::axpy,
    &avx2::scale,
    &avx2::sum_sq_diff,
};
#endif

Isa
select_isa() noexcept {
    if (const char* env = std::getenv("DEFORM_GSP_SIMD")) {
        if (std::string_view(env) == "scalar") {
            return Isa::Scalar;
        }
    }
    return cpu_supports(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

}  // namespace

std::string_view
to_string(Isa isa) noexcept {
    return isa == Isa::Avx2 ? "avx2" : "scalar";
}

bool
cpu_supports(Isa isa) noexcept {
    switch (isa) {
        case Isa::Scalar:
            return true;
        case Isa::Avx2:
#if defined(DEFORM_GSP_HAVE_AVX2)
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
    }
    return false;
}

const KernelTable&
table(Isa isa) noexcept {
#if defined(DEFORM_GSP_HAVE_AVX2)
    if (isa == Isa::Avx2 && cpu_supports(Isa::Avx2)) {
        return kAvx2Table;
    }
#else
    (void)isa;
#endif
    return kGenericTable;
}

Isa
active_isa() noexcept {
    static const Isa isa = select_isa();
    return isa;
}

const KernelTable&
active() noexcept {
    static const KernelTable& t = table(active_isa());
    return t;
}

double
dot(std::span<const double> a, std::span<const double> b) {
    assert(a.size() == b.size());
    return active().dot(a.data(), b.data(), a.size());
}

void
axpy(double alpha, std::span<const double> x, std::span<double> y) {
    assert(x.size() == y.size());
    active().axpy(alpha, x.data(), y.data(), x.size());
}

void
scale(double alpha, std::span<const double> x, std::span<double> out) {
    assert(x.size() == out.size());
    active().scale(alpha, x.data(), out.data(), x.size());
}

double
sum_sq_diff(std::span<const double> a, std::span<const double> b) {
    assert(a.size() == b.size());
    return active().sum_sq_diff(a.data(), b.data(), a.size());
}

}  // namespace deform_gsp::simd
