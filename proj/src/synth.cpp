#include "mptcf/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mptcf/rng.hpp"

namespace mptcf {

namespace {

std::string padded_id(const char* prefix, long i, long count) {
  int width = 1;
  for (long c = count - 1; c >= 10; c /= 10) ++width;
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%s%0*d", prefix, std::min(width, 19), static_cast<int>(i));
  return buf;
}

// Popularity-weighted sample of `size` distinct asset indices.
std::vector<long> sample_subset(Rng& rng, const std::vector<double>& weights, long size) {
  const long n = static_cast<long>(weights.size());
  std::vector<long> picked;
  std::vector<char> taken(static_cast<std::size_t>(n), 0);
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  while (static_cast<long>(picked.size()) < size) {
    double u = rng.uniform01() * total;
    long j = 0;
    for (; j < n - 1; ++j) {
      u -= weights[static_cast<std::size_t>(j)];
      if (u <= 0.0) break;
    }
    if (taken[static_cast<std::size_t>(j)]) continue;  // rejection keeps weights exact
    taken[static_cast<std::size_t>(j)] = 1;
    picked.push_back(j);
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

}  // namespace

void SynthConfig::validate() const {
  if (n_assets < 1 || n_users < 1 || n_days < 1 || n_snapshot_days < 1)
    throw InvalidInput("synth counts must be positive");
  if (n_snapshot_days > n_days)
    throw InvalidInput("n_snapshot_days cannot exceed n_days");
  if (n_factors < 0) throw InvalidInput("n_factors must be >= 0");
  if (!(noise_scale >= 0.0)) throw InvalidInput("noise_scale must be >= 0");
  if (holdings_min < 1 || holdings_max < holdings_min)
    throw InvalidInput("holdings range must satisfy 1 <= min <= max");
  if (!(gamma_law.median > 0.0) || !(gamma_law.log_std >= 0.0))
    throw InvalidInput("gamma law requires median > 0 and log_std >= 0");
  gamma_bounds.validate();
  decay.validate();
}

ReturnHistory generate_market(const SynthConfig& cfg) {
  cfg.validate();
  const long n = cfg.n_assets;
  const long T = cfg.n_days;
  const long k = cfg.n_factors;

  Rng structure_rng(derive_seed(cfg.seed, 1));
  Vec drift(n), idio_vol(n);
  Mat loadings = Mat::Zero(n, std::max<long>(k, 1));
  for (long j = 0; j < n; ++j) {
    drift[j] = structure_rng.normal(cfg.drift_mean, cfg.drift_std);
    const double vol = structure_rng.uniform(cfg.vol_min, cfg.vol_max);
    double factor_share = k > 0 ? structure_rng.uniform(0.2, 0.7) : 0.0;
    if (k > 0) {
      Vec dir(k);
      for (long f = 0; f < k; ++f) dir[f] = structure_rng.normal();
      dir.normalize();
      loadings.row(j) = (vol * std::sqrt(factor_share)) * dir.transpose();
    }
    idio_vol[j] = vol * std::sqrt(1.0 - factor_share);
  }

  Rng path_rng(derive_seed(cfg.seed, 2));
  ReturnHistory history;
  history.returns.resize(T, n);
  history.dates.reserve(static_cast<std::size_t>(T));
  history.assets.reserve(static_cast<std::size_t>(n));
  for (long j = 0; j < n; ++j) history.assets.push_back(padded_id("A", j, n));
  Vec factors(std::max<long>(k, 1));
  for (long t = 0; t < T; ++t) {
    history.dates.push_back(cfg.start_date.plus_days(static_cast<int>(t + 1)));
    for (long f = 0; f < k; ++f) factors[f] = path_rng.normal();
    for (long j = 0; j < n; ++j) {
      double r = drift[j] + idio_vol[j] * path_rng.normal();
      if (k > 0) r += loadings.row(j).dot(factors.head(k));
      history.returns(t, j) = r;
    }
  }
  history.validate();
  return history;
}

SynthUsers generate_users(const SynthConfig& cfg, const MomentEstimates& m) {
  cfg.validate();
  if (m.size() != cfg.n_assets)
    throw DimensionMismatch("moment universe does not match n_assets");

  // Popularity ranks come from one shared seeded permutation.
  Rng pop_rng(derive_seed(cfg.seed, 3));
  std::vector<long> order(static_cast<std::size_t>(cfg.n_assets));
  std::iota(order.begin(), order.end(), 0L);
  for (long j = cfg.n_assets - 1; j > 0; --j)
    std::swap(order[static_cast<std::size_t>(j)],
              order[static_cast<std::size_t>(pop_rng.below(static_cast<std::uint64_t>(j + 1)))]);
  std::vector<double> popularity(static_cast<std::size_t>(cfg.n_assets));
  for (long rank = 0; rank < cfg.n_assets; ++rank)
    popularity[static_cast<std::size_t>(order[static_cast<std::size_t>(rank)])] =
        std::pow(static_cast<double>(rank + 1), -cfg.popularity_exponent);

  std::vector<Date> snap_dates;
  for (long d = cfg.n_days - cfg.n_snapshot_days; d < cfg.n_days; ++d)
    snap_dates.push_back(cfg.start_date.plus_days(static_cast<int>(d + 1)));

  const double log_median = std::log(cfg.gamma_law.median);
  std::vector<SnapshotRecord> records;
  Vec gammas(cfg.n_users);
  for (long i = 0; i < cfg.n_users; ++i) {
    Rng rng(derive_seed(cfg.seed, 1000 + static_cast<std::uint64_t>(i)));
    const double gamma_star = std::clamp(rng.lognormal(log_median, cfg.gamma_law.log_std),
                                         cfg.gamma_bounds.lo, cfg.gamma_bounds.hi);
    gammas[i] = gamma_star;

    const long size = std::min<long>(
        cfg.n_assets, rng.uniform_int(static_cast<int>(cfg.holdings_min),
                                      static_cast<int>(cfg.holdings_max)));
    std::vector<long> subset;
    if (size >= cfg.n_assets) {
      subset.resize(static_cast<std::size_t>(cfg.n_assets));
      std::iota(subset.begin(), subset.end(), 0L);
    } else {
      subset = sample_subset(rng, popularity, size);
    }

    const MomentEstimates sub = m.restricted(subset);
    Vec w_sub = optimal_portfolio(sub, gamma_star).weights.weights;
    if (cfg.noise_scale > 0.0) {
      for (long a = 0; a < w_sub.size(); ++a)
        if (w_sub[a] > 0.0) w_sub[a] *= std::exp(cfg.noise_scale * rng.normal());
      w_sub /= w_sub.sum();
    }

    const double notional = rng.lognormal(std::log(1e4), 0.5);
    const std::string user = padded_id("u", i, cfg.n_users);
    for (Date d : snap_dates) {
      for (std::size_t a = 0; a < subset.size(); ++a) {
        const double value = notional * w_sub[static_cast<long>(a)];
        if (value <= 0.0) continue;
        records.push_back(SnapshotRecord{
            d, user, m.assets[static_cast<std::size_t>(subset[a])], value});
      }
    }
  }
  return SynthUsers{SnapshotStore(std::move(records)), GammaVector{std::move(gammas)}};
}

}  // namespace mptcf
