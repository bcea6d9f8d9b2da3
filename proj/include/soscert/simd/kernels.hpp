#pragma once

// Floating-point inner loops used by the SDP solver and by sampling checks.
// Every kernel has a portable scalar reference; an AVX2/FMA variant is
// compiled separately and chosen at startup when the CPU supports it.
// SOSCERT_SIMD=scalar in the environment forces the reference path.

#include <cstddef>
#include <cstdint>
#include <span>

namespace soscert::simd {

enum class Isa { kScalar, kAvx2 };

struct KernelTable {
  Isa isa;
  const char* name;
  /// sum_i x[i] * y[i]
  double (*dot)(const double* x, const double* y, std::size_t n);
  /// y += a * x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  /// C = A * B, row-major; A is m x k, B is k x n, C is m x n.
  void (*gemm)(const double* a, const double* b, double* c, std::size_t m, std::size_t k,
               std::size_t n);
  /// Sparse polynomial at npoints points. exps holds nterms rows of nvars
  /// degrees; coords[v] points at npoints values of variable v. Writes the
  /// value and sum_t |c_t m_t(x)| per point.
  void (*poly_eval)(const double* coeffs, const std::uint16_t* exps, std::size_t nterms,
                    std::size_t nvars, const double* const* coords, std::size_t npoints,
                    double* values, double* abs_values);
};

const KernelTable& scalar_kernels();
/// nullptr when the variant was not compiled in or the CPU lacks AVX2/FMA.
const KernelTable* avx2_kernels();
/// Chosen once per process.
const KernelTable& active_kernels();

inline double dot(std::span<const double> x, std::span<const double> y) {
  return active_kernels().dot(x.data(), y.data(), x.size());
}

inline void axpy(double a, std::span<const double> x, std::span<double> y) {
  active_kernels().axpy(a, x.data(), y.data(), x.size());
}

}  // namespace soscert::simd
