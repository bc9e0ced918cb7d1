#pragma once

#include "mptcf/cf.hpp"
#include "mptcf/frontier.hpp"
#include "mptcf/mpt_scoring.hpp"

namespace mptcf {

/// Shape of the risk-aversion population law (log-normal).
struct GammaLaw {
  double median = 20.9;
  double log_std = 1.0;
};

struct SynthConfig {
  long n_assets = 50;
  long n_users = 200;
  long n_days = 504;          // return periods in the generated market
  long n_snapshot_days = 5;   // trailing days that get user snapshots
  std::uint64_t seed = 42;

  GammaLaw gamma_law;
  double popularity_exponent = 1.0;  // power-law skew of asset adoption
  double noise_scale = 0.1;          // log-scale perturbation of optimal weights
  long n_factors = 3;                // 0 = independent assets

  long holdings_min = 3;  // holdings_min >= n_assets pins every user to the
  long holdings_max = 12; // full universe
  GammaBounds gamma_bounds;
  DecayConfig decay;  // used to derive the moments the portfolios are built on

  // Daily market scale knobs.
  double vol_min = 0.008;
  double vol_max = 0.025;
  double drift_mean = 4e-4;
  double drift_std = 6e-4;

  Date start_date = Date{16437};  // 2015-01-02

  void validate() const;
};

/// Seeded correlated-factor return history: r_t = drift + B f_t + idio noise.
ReturnHistory generate_market(const SynthConfig& cfg);

struct SynthUsers {
  SnapshotStore store;
  GammaVector true_gammas;  // aligned with store.user_ids()
};

/// Each user draws gamma* from the law, gets a portfolio near the optimal one
/// at gamma* on a popularity-sampled asset subset, and emits static snapshots
/// for the trailing n_snapshot_days market dates.
SynthUsers generate_users(const SynthConfig& cfg, const MomentEstimates& m);

}  // namespace mptcf
