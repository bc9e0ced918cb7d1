#include "mptcf/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "mptcf/rng.hpp"

namespace mptcf {

BenchInstance make_bench_instance(long m, long n, std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0xbe7c4));

  BenchInstance inst;
  inst.moments.mu.resize(n);
  for (long j = 0; j < n; ++j) inst.moments.mu[j] = rng.normal(4e-4, 6e-4);
  inst.moments.assets.resize(static_cast<std::size_t>(n));

  // Low-rank-plus-diagonal covariance keeps generation O(n^2) and PSD.
  const long k = 4;
  Mat loadings(n, k);
  for (long j = 0; j < n; ++j)
    for (long f = 0; f < k; ++f) loadings(j, f) = rng.normal(0.0, 0.01);
  inst.moments.sigma = loadings * loadings.transpose();
  for (long j = 0; j < n; ++j) inst.moments.sigma(j, j) += rng.uniform(5e-5, 4e-4);

  inst.w.values = Mat::Zero(m, n);
  inst.w.period = DateRange(Date{0}, Date{0});
  for (long i = 0; i < m; ++i) {
    const int holdings = rng.uniform_int(1, static_cast<int>(std::min<long>(12, n)));
    double total = 0.0;
    for (int h = 0; h < holdings; ++h) {
      const long j = static_cast<long>(rng.below(static_cast<std::uint64_t>(n)));
      const double v = rng.uniform(0.1, 1.0);
      inst.w.values(i, j) += v;
      total += v;
    }
    inst.w.values.row(i) /= total;
  }
  inst.w_r = replacement_weights(inst.w);

  inst.gammas.values.resize(m);
  for (long i = 0; i < m; ++i)
    inst.gammas.values[i] = std::exp(rng.uniform(std::log(0.1), std::log(1000.0)));
  return inst;
}

double time_scoring(const BenchInstance& inst, const std::string& method, int reps) {
  const auto run_once = [&] {
    if (method == "naive")
      return score_naive(inst.w, inst.w_r, inst.gammas, inst.moments);
    if (method == "vectorized")
      return score_vectorized(inst.w, inst.w_r, inst.gammas, inst.moments);
    throw InvalidInput("unknown scoring method '" + method + "'");
  };

  // Calibrate a batch size so each measurement spans at least ~50 ms.
  long batch = 1;
  {
    const auto t0 = std::chrono::steady_clock::now();
    volatile double sink = run_once().values(0, 0);
    (void)sink;
    const double once = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (once < 0.05) batch = static_cast<long>(std::ceil(0.05 / std::max(once, 1e-6)));
  }

  std::vector<double> samples;
  samples.reserve(static_cast<std::size_t>(reps));
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    for (long b = 0; b < batch; ++b) {
      volatile double sink = run_once().values(0, 0);
      (void)sink;
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    samples.push_back(elapsed / static_cast<double>(batch));
  }
  std::sort(samples.begin(), samples.end());
  return samples[samples.size() / 2];
}

std::vector<BenchRow> run_scaling_bench(const std::vector<long>& ms,
                                        const std::vector<long>& ns,
                                        const std::vector<std::string>& methods,
                                        std::uint64_t seed, int reps) {
  std::vector<BenchRow> rows;
  for (long m : ms)
    for (long n : ns) {
      const BenchInstance inst = make_bench_instance(m, n, seed);
      for (const auto& method : methods)
        rows.push_back(BenchRow{m, n, method, time_scoring(inst, method, reps)});
    }
  return rows;
}

}  // namespace mptcf
