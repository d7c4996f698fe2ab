#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace qkt::kernels {

using cplx = std::complex<double>;

// Data-parallel inner loops shared by the floquet and experiment modules.
// Every kernel has a scalar reference implementation and, where the host
// supports it, an AVX2/FMA variant; active() picks one at first use.
struct KernelTable {
  std::string_view name;

  /// out[w] = sum_{M=-L}^{L} exp(-i omegas[w] M) f[M + L], with f.size() == 2L + 1.
  void (*spectral_sum)(std::span<const cplx> f, std::span<const double> omegas, std::span<cplx> out);

  /// out[c] = |<columns[:, c] | v>|^2 for a column-major dim x n block.
  void (*projection_weights)(std::span<const cplx> columns, std::size_t dim, std::span<const cplx> v,
                             std::span<double> out);

  /// out = sum_c coeffs[c] * columns[:, c] (dense complex matrix-vector product).
  void (*combine_columns)(std::span<const cplx> columns, std::size_t dim, std::span<const cplx> coeffs,
                          std::span<cplx> out);
};

const KernelTable& scalar();

/// nullptr when the binary or the CPU lacks AVX2/FMA.
const KernelTable* avx2();

/// Fastest supported table, unless the environment variable QKT_SIMD=scalar
/// forces the reference path.
const KernelTable& active();

}  // namespace qkt::kernels
