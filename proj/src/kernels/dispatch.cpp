#include <cassert>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "limelight/kernels.hpp"

namespace limelight::kernels {

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
    case Isa::kNeon: return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(__x86_64__) || defined(__i386__)
      if (detail::avx2_table() == nullptr) return false;
      __builtin_cpu_init();
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::kNeon:
      // Advanced SIMD is mandatory on aarch64.
      return detail::neon_table() != nullptr;
  }
  return false;
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::kScalar, Isa::kAvx2, Isa::kNeon}) {
    if (isa_available(isa)) out.push_back(isa);
  }
  return out;
}

const KernelTable& table_for(Isa isa) {
  if (!isa_available(isa)) {
    throw std::invalid_argument("kernel ISA not available: " +
                                std::string(isa_name(isa)));
  }
  switch (isa) {
    case Isa::kScalar: return detail::scalar_table();
    case Isa::kAvx2: return *detail::avx2_table();
    case Isa::kNeon: return *detail::neon_table();
  }
  return detail::scalar_table();
}

namespace {

const KernelTable& select_table() {
  if (const char* env = std::getenv("LIMELIGHT_ISA"); env != nullptr) {
    const std::string_view want(env);
    for (Isa isa : {Isa::kScalar, Isa::kAvx2, Isa::kNeon}) {
      if (want == isa_name(isa) && isa_available(isa)) return table_for(isa);
    }
  }
  if (isa_available(Isa::kAvx2)) return table_for(Isa::kAvx2);
  if (isa_available(Isa::kNeon)) return table_for(Isa::kNeon);
  return detail::scalar_table();
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& table = select_table();
  return table;
}

double dot(std::span<const double> x, std::span<const double> y) {
  assert(x.size() == y.size());
  return active().dot(x.data(), y.data(), x.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  active().axpy(alpha, x.data(), y.data(), x.size());
}

void scale(double alpha, std::span<double> x) {
  active().scale(alpha, x.data(), x.size());
}

double weighted_sq_diff(std::span<const double> w, std::span<const double> a,
                        std::span<const double> b) {
  assert(w.size() == a.size() && a.size() == b.size());
  return active().weighted_sq_diff(w.data(), a.data(), b.data(), a.size());
}

}  // namespace limelight::kernels
