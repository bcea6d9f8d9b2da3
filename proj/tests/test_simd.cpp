#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <random>
#include <string_view>
#include <vector>

#include "soscert/reduction.hpp"
#include "soscert/simd/kernels.hpp"

using namespace soscert;

namespace {

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> d;
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

// Kernels to compare against the scalar reference.
std::vector<const simd::KernelTable*> variants() {
  std::vector<const simd::KernelTable*> out{&simd::scalar_kernels()};
  if (const auto* t = simd::avx2_kernels()) out.push_back(t);
  else MESSAGE("AVX2 variant unavailable; comparing scalar only");
  return out;
}

}  // namespace

TEST_CASE("dot and axpy agree with the reference") {
  std::mt19937_64 rng(3);
  for (const auto* k : variants()) {
    CAPTURE(k->name);
    for (std::size_t n = 0; n < 70; ++n) {
      const auto x = random_vec(rng, n), y = random_vec(rng, n);
      double ref = 0, mag = 0;
      for (std::size_t i = 0; i < n; ++i) {
        ref += x[i] * y[i];
        mag += std::abs(x[i] * y[i]);
      }
      CHECK(std::abs(k->dot(x.data(), y.data(), n) - ref) <= 1e-14 * (1 + mag));

      auto a = y, b = y;
      k->axpy(0.37, x.data(), a.data(), n);
      for (std::size_t i = 0; i < n; ++i) b[i] += 0.37 * x[i];
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-15 * (1 + std::abs(b[i])));
    }
  }
}

TEST_CASE("gemm agrees with the reference") {
  std::mt19937_64 rng(4);
  for (const auto* k : variants()) {
    CAPTURE(k->name);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t m = 1 + rng() % 13, kk = 1 + rng() % 13, n = 1 + rng() % 13;
      const auto a = random_vec(rng, m * kk), b = random_vec(rng, kk * n);
      std::vector<double> c(m * n, 99.0);
      k->gemm(a.data(), b.data(), c.data(), m, kk, n);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          double ref = 0, mag = 0;
          for (std::size_t t = 0; t < kk; ++t) {
            ref += a[i * kk + t] * b[t * n + j];
            mag += std::abs(a[i * kk + t] * b[t * n + j]);
          }
          CHECK(std::abs(c[i * n + j] - ref) <= 1e-14 * (1 + mag));
        }
    }
  }
}

TEST_CASE("batched polynomial evaluation agrees with exact evaluation") {
  const Polynomial p = reduction::build_P();
  std::vector<double> coeffs;
  std::vector<std::uint16_t> exps;
  for (const auto& [e, c] : p.terms()) {
    coeffs.push_back(c.get_d());
    for (auto d : e.degrees()) exps.push_back(d);
  }
  std::mt19937_64 rng(8);
  const std::size_t npts = 37;  // not a multiple of the vector width
  std::vector<std::vector<double>> coords(4);
  for (auto& c : coords) c = random_vec(rng, npts);
  const double* cp[] = {coords[0].data(), coords[1].data(), coords[2].data(), coords[3].data()};

  std::vector<double> ref(npts), ref_abs(npts);
  simd::scalar_kernels().poly_eval(coeffs.data(), exps.data(), coeffs.size(), 4, cp, npts, ref.data(), ref_abs.data());
  for (std::size_t i = 0; i < npts; ++i) {
    const Rational pt[] = {Rational(coords[0][i]), Rational(coords[1][i]), Rational(coords[2][i]), Rational(coords[3][i])};
    CHECK(std::abs(ref[i] - evaluate(p, pt).get_d()) <= 1e-13 * ref_abs[i]);
  }
  for (const auto* k : variants()) {
    CAPTURE(k->name);
    std::vector<double> v(npts), av(npts);
    k->poly_eval(coeffs.data(), exps.data(), coeffs.size(), 4, cp, npts, v.data(), av.data());
    for (std::size_t i = 0; i < npts; ++i) {
      CHECK(std::abs(v[i] - ref[i]) <= 1e-13 * ref_abs[i]);
      CHECK(std::abs(av[i] - ref_abs[i]) <= 1e-13 * ref_abs[i]);
    }
  }
}

TEST_CASE("dispatch honours the environment override") {
  const char* env = std::getenv("SOSCERT_SIMD");
  if (env != nullptr && std::string_view(env) == "scalar") {
    CHECK(simd::active_kernels().isa == simd::Isa::kScalar);
  } else if (simd::avx2_kernels() != nullptr) {
    CHECK(simd::active_kernels().isa == simd::Isa::kAvx2);
  } else {
    CHECK(simd::active_kernels().isa == simd::Isa::kScalar);
  }
}
