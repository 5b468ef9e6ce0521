#include <atomic>

#include "gpswf/errors.hpp"
#include "gpswf/kernels.hpp"

namespace gpswf::simd {

#ifdef GPSWF_HAVE_AVX2
const KernelTable* avx2_kernels_compiled();
#endif

namespace {

const KernelTable* detect() {
  if (const KernelTable* t = avx2_kernels()) return t;
  return &scalar_kernels();
}

std::atomic<const KernelTable*>& slot() {
  static std::atomic<const KernelTable*> active{detect()};
  return active;
}

}  // namespace

const KernelTable* avx2_kernels() {
#ifdef GPSWF_HAVE_AVX2
  static const bool supported = __builtin_cpu_supports("avx2");
  if (supported) return avx2_kernels_compiled();
#endif
  return nullptr;
}

const KernelTable& active_kernels() { return *slot().load(std::memory_order_acquire); }

Isa active_isa() { return &active_kernels() == &scalar_kernels() ? Isa::Scalar : Isa::Avx2; }

void force_isa(Isa isa) {
  if (isa == Isa::Scalar) {
    slot().store(&scalar_kernels(), std::memory_order_release);
    return;
  }
  const KernelTable* t = avx2_kernels();
  if (!t) throw PreconditionError("AVX2 kernels unavailable on this build or CPU");
  slot().store(t, std::memory_order_release);
}

void reset_isa() { slot().store(detect(), std::memory_order_release); }

}  // namespace gpswf::simd
