#pragma once

// Kernel function table shared by every ISA variant. Deliberately depends on
// <cstddef> only: the vector translation units include nothing else.

#include <cstddef>

namespace limelight::kernels {

enum class Isa { kScalar, kAvx2, kNeon };

struct KernelTable {
  Isa isa;
  // sum_i x[i] * y[i]
  double (*dot)(const double* x, const double* y, std::size_t n);
  // y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // x[i] *= alpha
  void (*scale)(double alpha, double* x, std::size_t n);
  // sum_i w[i] * (a[i] - b[i])^2
  double (*weighted_sq_diff)(const double* w, const double* a, const double* b,
                             std::size_t n);
};

namespace detail {
// Per-ISA entry points. Variants not compiled for this target return nullptr.
const KernelTable& scalar_table();
const KernelTable* avx2_table();
const KernelTable* neon_table();
}  // namespace detail

}  // namespace limelight::kernels
