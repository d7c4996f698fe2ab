// Compiled with -mavx2 -mfma; only reached through dispatch after a CPU check.
#include <immintrin.h>

#include <cmath>

#include "kernels_internal.hpp"

namespace qkt::kernels {

namespace {

// Phases are advanced by complex multiplication and re-seeded from
// std::cos/std::sin every kReanchor terms to bound the drift.
constexpr long kReanchor = 32;

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void spectral_sum_avx2(std::span<const cplx> f, std::span<const double> omegas, std::span<cplx> out) {
  const auto L = static_cast<long>(f.size() / 2);
  const std::size_t n = omegas.size();
  const double* fd = reinterpret_cast<const double*>(f.data());
  std::size_t w = 0;

  alignas(32) double buf_re[4];
  alignas(32) double buf_im[4];
  for (; w + 4 <= n; w += 4) {
    for (int l = 0; l < 4; ++l) {
      buf_re[l] = std::cos(omegas[w + l]);
      buf_im[l] = -std::sin(omegas[w + l]);
    }
    const __m256d step_re = _mm256_load_pd(buf_re);
    const __m256d step_im = _mm256_load_pd(buf_im);
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    __m256d z_re = _mm256_setzero_pd();
    __m256d z_im = _mm256_setzero_pd();

    for (long m = -L; m <= L; ++m) {
      if ((m + L) % kReanchor == 0) {
        for (int l = 0; l < 4; ++l) {
          const double arg = -omegas[w + l] * static_cast<double>(m);
          buf_re[l] = std::cos(arg);
          buf_im[l] = std::sin(arg);
        }
        z_re = _mm256_load_pd(buf_re);
        z_im = _mm256_load_pd(buf_im);
      }
      const std::size_t idx = static_cast<std::size_t>(m + L);
      const __m256d f_re = _mm256_broadcast_sd(fd + 2 * idx);
      const __m256d f_im = _mm256_broadcast_sd(fd + 2 * idx + 1);
      acc_re = _mm256_fmadd_pd(z_re, f_re, acc_re);
      acc_re = _mm256_fnmadd_pd(z_im, f_im, acc_re);
      acc_im = _mm256_fmadd_pd(z_re, f_im, acc_im);
      acc_im = _mm256_fmadd_pd(z_im, f_re, acc_im);

      const __m256d nz_re = _mm256_fmsub_pd(z_re, step_re, _mm256_mul_pd(z_im, step_im));
      const __m256d nz_im = _mm256_fmadd_pd(z_re, step_im, _mm256_mul_pd(z_im, step_re));
      z_re = nz_re;
      z_im = nz_im;
    }
    _mm256_store_pd(buf_re, acc_re);
    _mm256_store_pd(buf_im, acc_im);
    for (int l = 0; l < 4; ++l) out[w + l] = {buf_re[l], buf_im[l]};
  }
  if (w < n) detail::kScalarTable.spectral_sum(f, omegas.subspan(w), out.subspan(w));
}

void projection_weights_avx2(std::span<const cplx> columns, std::size_t dim, std::span<const cplx> v,
                             std::span<double> out) {
  const double* vd = reinterpret_cast<const double*>(v.data());
  const std::size_t pairs = dim / 2;
  for (std::size_t c = 0; c < out.size(); ++c) {
    const double* cd = reinterpret_cast<const double*>(columns.data() + c * dim);
    __m256d p = _mm256_setzero_pd();  // [ar*br, ai*bi, ...]
    __m256d q = _mm256_setzero_pd();  // [ar*bi, ai*br, ...]
    for (std::size_t k = 0; k < pairs; ++k) {
      const __m256d a = _mm256_loadu_pd(cd + 4 * k);
      const __m256d b = _mm256_loadu_pd(vd + 4 * k);
      p = _mm256_fmadd_pd(a, b, p);
      q = _mm256_fmadd_pd(a, _mm256_permute_pd(b, 0b0101), q);
    }
    double re = hsum(p);
    const __m256d sign = _mm256_setr_pd(1.0, -1.0, 1.0, -1.0);
    double im = hsum(_mm256_mul_pd(q, sign));
    if (dim % 2 != 0) {
      const cplx a = columns[c * dim + dim - 1];
      const cplx b = v[dim - 1];
      re += a.real() * b.real() + a.imag() * b.imag();
      im += a.real() * b.imag() - a.imag() * b.real();
    }
    out[c] = re * re + im * im;
  }
}

void combine_columns_avx2(std::span<const cplx> columns, std::size_t dim, std::span<const cplx> coeffs,
                          std::span<cplx> out) {
  double* od = reinterpret_cast<double*>(out.data());
  const std::size_t pairs = dim / 2;
  for (std::size_t i = 0; i < dim; ++i) out[i] = 0.0;
  for (std::size_t c = 0; c < coeffs.size(); ++c) {
    const double* cd = reinterpret_cast<const double*>(columns.data() + c * dim);
    const __m256d ar = _mm256_set1_pd(coeffs[c].real());
    const __m256d ai = _mm256_set1_pd(coeffs[c].imag());
    for (std::size_t k = 0; k < pairs; ++k) {
      const __m256d col = _mm256_loadu_pd(cd + 4 * k);
      const __m256d swapped = _mm256_permute_pd(col, 0b0101);
      // even lanes: ar*cr - ai*ci, odd lanes: ar*ci + ai*cr
      const __m256d prod = _mm256_fmaddsub_pd(ar, col, _mm256_mul_pd(ai, swapped));
      _mm256_storeu_pd(od + 4 * k, _mm256_add_pd(_mm256_loadu_pd(od + 4 * k), prod));
    }
    if (dim % 2 != 0) out[dim - 1] += coeffs[c] * columns[c * dim + dim - 1];
  }
}

}  // namespace

namespace detail {
const KernelTable kAvx2Table{"avx2", &spectral_sum_avx2, &projection_weights_avx2, &combine_columns_avx2};
}  // namespace detail

}  // namespace qkt::kernels
