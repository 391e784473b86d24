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

#include <cstddef>
#include <span>
#include <string_view>

// Dense inner-loop kernels. Every kernel has a scalar reference in
// `generic` and, on x86-64, an AVX2+FMA variant in `avx2`. The active
// variant is chosen once at first use from the CPU feature flags; setting
// DEFORM_GSP_SIMD=scalar in the environment pins the scalar path.

namespace deform_gsp::simd {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa) noexcept;

struct KernelTable {
    // sum_i a[i] * b[i]
    double (*dot)(const double* a, const double* b, std::size_t n);
    // y[i] += alpha * x[i]
    void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
    // out[i] = alpha * x[i]
    void (*scale)(double alpha, const double* x, double* out, std::size_t n);
    // sum_i (a[i] - b[i])^2
    double (*sum_sq_diff)(const double* a, const double* b, std::size_t n);
};

namespace generic {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void scale(double alpha, const double* x, double* out, std::size_t n);
double sum_sq_diff(const double* a, const double* b, std::size_t n);
}  // namespace generic

#if defined(DEFORM_GSP_HAVE_AVX2)
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void scale(double alpha, const double* x, double* out, std::size_t n);
double sum_sq_diff(const double* a, const double* b, std::size_t n);
}  // namespace avx2
#endif

bool cpu_supports(Isa isa) noexcept;

/// Kernel table for a specific ISA. Requesting an ISA the build or the CPU
/// lacks returns the scalar table.
const KernelTable& table(Isa isa) noexcept;

Isa active_isa() noexcept;
const KernelTable& active() noexcept;

double dot(std::span<const double> a, std::span<const double> b);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void scale(double alpha, std::span<const double> x, std::span<double> out);
double sum_sq_diff(std::span<const double> a, std::span<const double> b);

inline double
sum_sq(std::span<const double> x) {
    return dot(x, x);
}

}  // namespace deform_gsp::simd
