#pragma once

#include <cstddef>
#include <span>

#include "gpswf/specfun.hpp"

namespace gpswf::simd {

// Bulk kernels with a scalar reference and optional AVX2 variant. Every
// variant produces bit-identical results: reductions use four interleaved
// partial sums combined as (s0 + s1) + (s2 + s3) in all variants.
struct KernelTable {
  const char* name;
  // out[i] = sum_k coeffs[k] p_k(x[i]), coeffs.size() <= rec.max_degree() + 1
  void (*jacobi_series)(std::span<const double> coeffs, const JacobiRecurrence& rec,
                        std::span<const double> x, std::span<double> out);
  // out[i] = sum_k coeffs[k] p_k'(x[i]) via the differentiated recurrence
  void (*jacobi_series_derivative)(std::span<const double> coeffs, const JacobiRecurrence& rec,
                                   std::span<const double> x, std::span<double> out);
  // moments[k] = sum_i f[i] p_k(x[i]) for k < moments.size()
  void (*jacobi_moments)(const JacobiRecurrence& rec, std::span<const double> x,
                         std::span<const double> f, std::span<double> moments);
  double (*dot)(std::span<const double> a, std::span<const double> b);
  double (*weighted_dot)(std::span<const double> w, std::span<const double> a,
                         std::span<const double> b);
};

enum class Isa { Scalar, Avx2 };

const KernelTable& scalar_kernels();
// nullptr when not compiled in or not supported by this CPU.
const KernelTable* avx2_kernels();

// Table used by the library. Chosen once from the CPU; overridable for tests.
const KernelTable& active_kernels();
Isa active_isa();
void force_isa(Isa isa);  // throws if the ISA is unavailable
void reset_isa();

}  // namespace gpswf::simd
