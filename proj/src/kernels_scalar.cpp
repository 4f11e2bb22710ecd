#include "spinim/kernels.hpp"

namespace spinim::kernels {

void blade_axpy_scalar(std::complex<double>* out, const std::complex<double>* b,
                       std::complex<double> a, unsigned i, const double* sign, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    out[i ^ j] += sign[j] * (a * b[j]);
  }
}

}  // namespace spinim::kernels
