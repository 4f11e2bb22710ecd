#include <atomic>

#include "spinim/kernels.hpp"

namespace spinim::kernels {

bool cpu_has_avx2() {
#if defined(SPINIM_HAVE_AVX2_KERNEL) && (defined(__GNUC__) || defined(__clang__))
  static const bool has = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return has;
#else
  return false;
#endif
}

namespace {

BladeAxpyFn detect() {
#if defined(SPINIM_HAVE_AVX2_KERNEL)
  if (cpu_has_avx2()) return &blade_axpy_avx2;
#endif
  return &blade_axpy_scalar;
}

std::atomic<BladeAxpyFn>& slot() {
  static std::atomic<BladeAxpyFn> fn{detect()};
  return fn;
}

}  // namespace

BladeAxpyFn active_blade_axpy() { return slot().load(std::memory_order_relaxed); }

std::string active_variant_name() {
#if defined(SPINIM_HAVE_AVX2_KERNEL)
  if (active_blade_axpy() == &blade_axpy_avx2) return "avx2";
#endif
  return "scalar";
}

bool force_variant(Variant v) {
  switch (v) {
    case Variant::Auto:
      slot().store(detect());
      return true;
    case Variant::Scalar:
      slot().store(&blade_axpy_scalar);
      return true;
    case Variant::Avx2:
#if defined(SPINIM_HAVE_AVX2_KERNEL)
      if (!cpu_has_avx2()) return false;
      slot().store(&blade_axpy_avx2);
      return true;
#else
      return false;
#endif
  }
  return false;
}

}  // namespace spinim::kernels
