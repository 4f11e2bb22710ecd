#pragma once

#include <complex>
#include <cstddef>
#include <string>

namespace spinim::kernels {

// out[i ^ j] += sign[j] * (a * b[j]) for j in [0, n). n is a power of two >= 2.
using BladeAxpyFn = void (*)(std::complex<double>* out, const std::complex<double>* b,
                             std::complex<double> a, unsigned i, const double* sign, std::size_t n);

void blade_axpy_scalar(std::complex<double>* out, const std::complex<double>* b,
                       std::complex<double> a, unsigned i, const double* sign, std::size_t n);

#if defined(SPINIM_HAVE_AVX2_KERNEL)
void blade_axpy_avx2(std::complex<double>* out, const std::complex<double>* b,
                     std::complex<double> a, unsigned i, const double* sign, std::size_t n);
#endif

enum class Variant { Auto, Scalar, Avx2 };

bool cpu_has_avx2();

// Kernel used by product(); chosen once from CPU features unless overridden.
BladeAxpyFn active_blade_axpy();
std::string active_variant_name();

// Test hook: pin a variant (Auto restores feature detection). Returns false
// if the requested variant is unavailable on this machine/build.
bool force_variant(Variant v);

}  // namespace spinim::kernels
