#include <cmath>
#include <cstring>

#include "soscert/simd/kernels.hpp"

namespace soscert::simd {

namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double s = 0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void gemm_scalar(const double* a, const double* b, double* c, std::size_t m, std::size_t k,
                 std::size_t n) {
  std::memset(c, 0, sizeof(double) * m * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t p = 0; p < k; ++p) {
      const double aip = a[i * k + p];
      if (aip == 0) continue;
      axpy_scalar(aip, b + p * n, c + i * n, n);
    }
}

void poly_eval_scalar(const double* coeffs, const std::uint16_t* exps, std::size_t nterms,
                      std::size_t nvars, const double* const* coords, std::size_t npoints,
                      double* values, double* abs_values) {
  for (std::size_t pt = 0; pt < npoints; ++pt) {
    double v = 0, av = 0;
    for (std::size_t t = 0; t < nterms; ++t) {
      double m = coeffs[t];
      for (std::size_t j = 0; j < nvars; ++j) {
        const double x = coords[j][pt];
        for (unsigned e = exps[t * nvars + j]; e > 0; --e) m *= x;
      }
      v += m;
      av += std::fabs(m);
    }
    values[pt] = v;
    abs_values[pt] = av;
  }
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{Isa::kScalar, "scalar", dot_scalar, axpy_scalar, gemm_scalar,
                                 poly_eval_scalar};
  return table;
}

}  // namespace soscert::simd
