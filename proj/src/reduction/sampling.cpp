#include <quadmath.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <thread>

#include "soscert/errors.hpp"
#include "soscert/reduction.hpp"
#include "soscert/simd/kernels.hpp"

namespace soscert::reduction {

namespace {

using quad = __float128;

// asin(sqrt(num / (num + rest))) without forming the ratio.
quad asin_sqrt_ratio(quad num, quad rest) { return atan2q(sqrtq(num), sqrtq(rest)); }

// 1 / (1 - sqrt(num / (num + rest))) = (1 + s) (num + rest) / rest.
quad inverse_one_minus_sqrt(quad num, quad rest) {
  const quad total = num + rest;
  const quad s = sqrtq(num / total);
  return (1 + s) * total / rest;
}

constexpr std::size_t kShardSize = 8192;

std::mt19937_64 shard_rng(std::uint64_t seed, std::size_t shard) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(shard), 0x5eedu};
  return std::mt19937_64(seq);
}

using SlackFn = double (*)(double, double, double, double, double, double);

SampleReport sample(SlackFn fn, std::size_t count, std::uint64_t seed) {
  if (count == 0) throw Error("sample count must be positive");
  const std::size_t shards = (count + kShardSize - 1) / kShardSize;
  std::vector<SampleReport> partial(shards);
  auto run_shard = [&](std::size_t s) {
    auto rng = shard_rng(seed, s);
    std::uniform_real_distribution<double> logu(std::log(1e-3), std::log(1e3));
    SampleReport r;
    r.min_slack = std::numeric_limits<double>::infinity();
    const std::size_t begin = s * kShardSize, end = std::min(count, begin + kShardSize);
    for (std::size_t i = begin; i < end; ++i) {
      std::array<double, 6> v;
      for (auto& x : v) x = std::exp(logu(rng));
      const double slack = fn(v[0], v[1], v[2], v[3], v[4], v[5]);
      if (slack < r.min_slack) {
        r.min_slack = slack;
        r.worst_input = v;
      }
    }
    partial[s] = r;
  };
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), shards));
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t s = w; s < shards; s += workers) run_shard(s);
    });
  for (auto& t : pool) t.join();

  SampleReport out = partial.front();
  for (const auto& r : partial)
    if (r.min_slack < out.min_slack) out = r;
  out.count = count;
  out.seed = seed;
  return out;
}

}  // namespace

double arcsine_slack(double a, double b, double c, double d, double R, double S) {
  const quad qa = a, qb = b, qc = c, qd = d, qR = R, qS = S, T = qR + qS;
  const quad left = qR * asin_sqrt_ratio(qa * qb, qR * (qR + qa + qb)) +
                    qS * asin_sqrt_ratio(qc * qd, qS * (qS + qc + qd));
  const quad right = T * asin_sqrt_ratio((qa + qc) * (qb + qd), T * (T + qa + qb + qc + qd));
  return static_cast<double>(right - left);
}

double ratio_slack(double a, double b, double c, double d, double R, double S) {
  const quad qa = a, qb = b, qc = c, qd = d, qR = R, qS = S, T = qR + qS;
  const quad left = qR / T * inverse_one_minus_sqrt(qa * qb, qR * (qR + qa + qb)) +
                    qS / T * inverse_one_minus_sqrt(qc * qd, qS * (qS + qc + qd));
  const quad right = inverse_one_minus_sqrt((qa + qc) * (qb + qd), T * (T + qa + qb + qc + qd));
  return static_cast<double>(right - left);
}

SampleReport sample_arcsine(std::size_t count, std::uint64_t seed) {
  return sample(&arcsine_slack, count, seed);
}

SampleReport sample_ratio(std::size_t count, std::uint64_t seed) {
  return sample(&ratio_slack, count, seed);
}

NonnegativityReport sample_nonnegativity(const Polynomial& p, std::size_t count, std::uint64_t seed) {
  const std::size_t n = p.context().size();
  std::vector<double> coeffs;
  std::vector<std::uint16_t> exps;
  for (const auto& [e, c] : p.terms()) {
    coeffs.push_back(c.get_d());
    for (auto d : e.degrees()) exps.push_back(d);
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<std::vector<double>> coords(n, std::vector<double>(count));
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < n; ++j) coords[j][i] = normal(rng);
  std::vector<const double*> ptrs;
  for (const auto& c : coords) ptrs.push_back(c.data());
  std::vector<double> values(count), abs_values(count);
  simd::active_kernels().poly_eval(coeffs.data(), exps.data(), coeffs.size(), n, ptrs.data(), count,
                                   values.data(), abs_values.data());
  NonnegativityReport report;
  report.count = count;
  report.seed = seed;
  report.min_relative_value = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < count; ++i) {
    const double rel = abs_values[i] > 0 ? values[i] / abs_values[i] : 0.0;
    if (rel < report.min_relative_value) {
      report.min_relative_value = rel;
      report.worst_point.assign(n, 0);
      for (std::size_t j = 0; j < n; ++j) report.worst_point[j] = coords[j][i];
    }
  }
  return report;
}

}  // namespace soscert::reduction
