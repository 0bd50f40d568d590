#pragma once

// Dense double-precision vector kernels with runtime ISA selection.
//
// Every kernel has a scalar reference implementation. AVX2+FMA (x86-64) and
// NEON (aarch64) variants are compiled when the toolchain supports them and
// chosen at first use from the CPU's capabilities. Setting the environment
// variable LIMELIGHT_ISA=scalar (or avx2, neon) overrides the choice.
//
// Vector variants reassociate reductions, so they agree with the scalar
// reference to rounding, not bitwise. Within a process the selected table is
// fixed, so results stay reproducible run to run on the same machine.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "limelight/kernel_table.hpp"

namespace limelight::kernels {

std::string_view isa_name(Isa isa);

// True when `isa` was compiled in and the running CPU supports it.
bool isa_available(Isa isa);

// All ISAs usable on this machine, scalar first.
std::vector<Isa> available_isas();

// Kernel table for a specific ISA. Throws std::invalid_argument when the ISA
// is unavailable.
const KernelTable& table_for(Isa isa);

// The process-wide table picked at first call.
const KernelTable& active();

// Span conveniences over active(). Sizes must match; checked in debug only.
double dot(std::span<const double> x, std::span<const double> y);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void scale(double alpha, std::span<double> x);
double weighted_sq_diff(std::span<const double> w, std::span<const double> a,
                        std::span<const double> b);

}  // namespace limelight::kernels
