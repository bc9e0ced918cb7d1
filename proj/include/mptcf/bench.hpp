#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mptcf/mpt_scoring.hpp"

namespace mptcf {

/// Inputs for one scoring benchmark size: random sparse portfolios, log-uniform
/// gammas in [0.1, 1000] and a random well-conditioned covariance.
struct BenchInstance {
  PortfolioMatrix w;
  ReplacementWeights w_r;
  GammaVector gammas;
  MomentEstimates moments;
};

BenchInstance make_bench_instance(long m, long n, std::uint64_t seed);

/// Median over `reps` wall-clock measurements of one scoring pass; short calls
/// are batched until the measurement window exceeds ~50 ms.
double time_scoring(const BenchInstance& inst, const std::string& method, int reps);

struct BenchRow {
  long m = 0;
  long n = 0;
  std::string method;
  double seconds = 0.0;
};

std::vector<BenchRow> run_scaling_bench(const std::vector<long>& ms,
                                        const std::vector<long>& ns,
                                        const std::vector<std::string>& methods,
                                        std::uint64_t seed, int reps);

}  // namespace mptcf
