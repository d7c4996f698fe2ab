#include <cmath>

#include "kernels_internal.hpp"

namespace qkt::kernels {

namespace {

void spectral_sum_scalar(std::span<const cplx> f, std::span<const double> omegas, std::span<cplx> out) {
  const auto L = static_cast<long>(f.size() / 2);
  for (std::size_t w = 0; w < omegas.size(); ++w) {
    double re = 0.0;
    double im = 0.0;
    for (long m = -L; m <= L; ++m) {
      const double arg = -omegas[w] * static_cast<double>(m);
      const double c = std::cos(arg);
      const double s = std::sin(arg);
      const cplx fm = f[static_cast<std::size_t>(m + L)];
      re += c * fm.real() - s * fm.imag();
      im += c * fm.imag() + s * fm.real();
    }
    out[w] = {re, im};
  }
}

void projection_weights_scalar(std::span<const cplx> columns, std::size_t dim, std::span<const cplx> v,
                               std::span<double> out) {
  for (std::size_t c = 0; c < out.size(); ++c) {
    const cplx* col = columns.data() + c * dim;
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      // conj(col) * v
      re += col[i].real() * v[i].real() + col[i].imag() * v[i].imag();
      im += col[i].real() * v[i].imag() - col[i].imag() * v[i].real();
    }
    out[c] = re * re + im * im;
  }
}

void combine_columns_scalar(std::span<const cplx> columns, std::size_t dim, std::span<const cplx> coeffs,
                            std::span<cplx> out) {
  for (std::size_t i = 0; i < dim; ++i) out[i] = 0.0;
  for (std::size_t c = 0; c < coeffs.size(); ++c) {
    const cplx* col = columns.data() + c * dim;
    const cplx a = coeffs[c];
    for (std::size_t i = 0; i < dim; ++i) out[i] += a * col[i];
  }
}

}  // namespace

namespace detail {
const KernelTable kScalarTable{"scalar", &spectral_sum_scalar, &projection_weights_scalar,
                               &combine_columns_scalar};
}  // namespace detail

}  // namespace qkt::kernels
