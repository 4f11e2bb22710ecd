#include <immintrin.h>

#include "spinim/kernels.hpp"

namespace spinim::kernels {

// Two complex doubles per register: [re0 im0 re1 im1].
void blade_axpy_avx2(std::complex<double>* out, const std::complex<double>* b,
                     std::complex<double> a, unsigned i, const double* sign, std::size_t n) {
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  const bool swap_pair = (i & 1u) != 0;
  auto* o = reinterpret_cast<double*>(out);
  const auto* bb = reinterpret_cast<const double*>(b);
  for (std::size_t j = 0; j < n; j += 2) {
    __m256d bv = _mm256_loadu_pd(bb + 2 * j);
    __m256d bswap = _mm256_permute_pd(bv, 0x5);  // [im0 re0 im1 re1]
    // a*b = (ar*br - ai*bi, ar*bi + ai*br)
    __m256d prod = _mm256_fmaddsub_pd(ar, bv, _mm256_mul_pd(ai, bswap));
    __m256d s = _mm256_set_pd(sign[j + 1], sign[j + 1], sign[j], sign[j]);
    prod = _mm256_mul_pd(prod, s);
    if (swap_pair) prod = _mm256_permute2f128_pd(prod, prod, 0x01);
    const std::size_t base = (i ^ j) & ~std::size_t(1);
    __m256d ov = _mm256_loadu_pd(o + 2 * base);
    _mm256_storeu_pd(o + 2 * base, _mm256_add_pd(ov, prod));
  }
}

}  // namespace spinim::kernels
