#include <immintrin.h>

#include <vector>

#include "mrplate/kernels.hpp"

namespace mrplate::kernels::avx2 {

namespace {

double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// Copies a strided-by-point row into a zero-padded buffer of width `padded`.
void pad_rows(std::span<const double> src, std::size_t rows, std::size_t npts, std::size_t padded,
              std::vector<double>& dst) {
  dst.assign(rows * padded, 0.0);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t q = 0; q < npts; ++q) dst[r * padded + q] = src[r * npts + q];
}

}  // namespace

void accumulate_btdb(std::span<const double> b, std::span<const double> weights, std::span<const double, 9> d,
                     int ncols, std::span<double> k) {
  const std::size_t npts = weights.size();
  const std::size_t n = static_cast<std::size_t>(ncols);
  const std::size_t padded = (npts + 3) & ~std::size_t{3};

  std::vector<double> bp, wp;
  pad_rows(b, 3 * n, npts, padded, bp);
  pad_rows(weights, 1, npts, padded, wp);

  // wdb = w_q * D * B_q
  std::vector<double> wdb(3 * n * padded);
  for (std::size_t r = 0; r < 3; ++r) {
    const __m256d d0 = _mm256_set1_pd(d[3 * r + 0]);
    const __m256d d1 = _mm256_set1_pd(d[3 * r + 1]);
    const __m256d d2 = _mm256_set1_pd(d[3 * r + 2]);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t q = 0; q < padded; q += 4) {
        __m256d s = _mm256_mul_pd(d0, _mm256_loadu_pd(&bp[(0 * n + j) * padded + q]));
        s = _mm256_fmadd_pd(d1, _mm256_loadu_pd(&bp[(1 * n + j) * padded + q]), s);
        s = _mm256_fmadd_pd(d2, _mm256_loadu_pd(&bp[(2 * n + j) * padded + q]), s);
        s = _mm256_mul_pd(s, _mm256_loadu_pd(&wp[q]));
        _mm256_storeu_pd(&wdb[(r * n + j) * padded + q], s);
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      __m256d acc = _mm256_setzero_pd();
      for (std::size_t q = 0; q < padded; q += 4) {
        for (std::size_t r = 0; r < 3; ++r) {
          acc = _mm256_fmadd_pd(_mm256_loadu_pd(&bp[(r * n + i) * padded + q]),
                                _mm256_loadu_pd(&wdb[(r * n + j) * padded + q]), acc);
        }
      }
      const double v = hsum(acc);
      k[i * n + j] += v;
      if (j != i) k[j * n + i] += v;
    }
  }
}

void accumulate_weighted_sum(std::span<const double> values, std::span<const double> weights, int ncols,
                             std::span<double> out) {
  const std::size_t npts = weights.size();
  const std::size_t padded = (npts + 3) & ~std::size_t{3};
  std::vector<double> vp, wp;
  pad_rows(values, static_cast<std::size_t>(ncols), npts, padded, vp);
  pad_rows(weights, 1, npts, padded, wp);
  for (std::size_t c = 0; c < static_cast<std::size_t>(ncols); ++c) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t q = 0; q < padded; q += 4) {
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(&wp[q]), _mm256_loadu_pd(&vp[c * padded + q]), acc);
    }
    out[c] += hsum(acc);
  }
}

}  // namespace mrplate::kernels::avx2
