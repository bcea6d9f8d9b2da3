// Built with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include <cstring>

#include "soscert/simd/kernels.hpp"

namespace soscert::simd {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) y[i] += a * x[i];
}

void gemm_avx2(const double* a, const double* b, double* c, std::size_t m, std::size_t k,
               std::size_t n) {
  std::memset(c, 0, sizeof(double) * m * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t p = 0; p < k; ++p) {
      const double aip = a[i * k + p];
      if (aip == 0) continue;
      axpy_avx2(aip, b + p * n, c + i * n, n);
    }
}

void poly_eval_avx2(const double* coeffs, const std::uint16_t* exps, std::size_t nterms,
                    std::size_t nvars, const double* const* coords, std::size_t npoints,
                    double* values, double* abs_values) {
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  std::size_t pt = 0;
  for (; pt + 4 <= npoints; pt += 4) {
    __m256d v = _mm256_setzero_pd(), av = _mm256_setzero_pd();
    for (std::size_t t = 0; t < nterms; ++t) {
      __m256d m = _mm256_set1_pd(coeffs[t]);
      for (std::size_t j = 0; j < nvars; ++j) {
        const __m256d x = _mm256_loadu_pd(coords[j] + pt);
        for (unsigned e = exps[t * nvars + j]; e > 0; --e) m = _mm256_mul_pd(m, x);
      }
      v = _mm256_add_pd(v, m);
      av = _mm256_add_pd(av, _mm256_andnot_pd(sign_mask, m));
    }
    _mm256_storeu_pd(values + pt, v);
    _mm256_storeu_pd(abs_values + pt, av);
  }
  if (pt < npoints) {
    const double* tail[32];
    for (std::size_t j = 0; j < nvars; ++j) tail[j] = coords[j] + pt;
    scalar_kernels().poly_eval(coeffs, exps, nterms, nvars, tail, npoints - pt, values + pt,
                               abs_values + pt);
  }
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{Isa::kAvx2, "avx2", dot_avx2, axpy_avx2, gemm_avx2, poly_eval_avx2};
  return table;
}

}  // namespace soscert::simd
