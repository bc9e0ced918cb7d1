#pragma once

#include <string>
#include <vector>

#include "mptcf/date.hpp"
#include "mptcf/scores.hpp"

namespace mptcf {

/// One daily portfolio-snapshot observation: the market value of user's
/// position on an asset. Values are non-negative; zero means "row present but
/// nothing held" and never counts as a holding.
struct SnapshotRecord {
  Date date;
  std::string user_id;
  std::string asset_id;
  double market_value = 0.0;
};

/// Immutable set of snapshot records with canonical (sorted, unique) user and
/// asset id lists. Rejects duplicate (user, asset, date) keys and negative or
/// non-finite values.
class SnapshotStore {
public:
  SnapshotStore() = default;
  explicit SnapshotStore(std::vector<SnapshotRecord> records);

  const std::vector<SnapshotRecord>& records() const { return records_; }
  const std::vector<std::string>& user_ids() const { return user_ids_; }
  const std::vector<std::string>& asset_ids() const { return asset_ids_; }

  bool empty() const { return records_.empty(); }
  Date last_date() const;  // throws InvalidInput when empty

  /// Records for assets missing from `universe` (dropped by the matrix builds).
  long count_off_universe(const std::vector<std::string>& universe) const;

private:
  std::vector<SnapshotRecord> records_;  // sorted by (user, date, asset)
  std::vector<std::string> user_ids_;
  std::vector<std::string> asset_ids_;
};

/// Implicit-feedback user-item matrix over a period: 1 iff the user held the
/// asset (non-zero value) on some day in the range.
struct BinaryHoldings {
  Mat values;  // m x n over {0, 1}
  DateRange period;
};

/// Row-normalized aggregate of market values over a period. Rows sum to 1 or
/// are all zero (user held nothing in the window).
struct PortfolioMatrix {
  Mat values;  // m x n
  DateRange period;
};

/// Item-item transition probabilities: zero diagonal, rows sum to 1 or 0.
struct TransitionMatrix {
  Mat values;  // n x n
};

/// Rows follow store.user_ids(); columns follow `universe`. Records for assets
/// outside the universe are skipped.
BinaryHoldings build_R(const SnapshotStore& store, const DateRange& period,
                       const std::vector<std::string>& universe);

PortfolioMatrix build_W(const SnapshotStore& store, const DateRange& period,
                        const std::vector<std::string>& universe);

/// Co-count matrix R'R: entry (j,j') counts users holding both assets.
Mat cocount(const BinaryHoldings& r);

/// Zero the diagonal of the co-count matrix and normalize each row to sum 1
/// (all-zero rows stay zero).
TransitionMatrix transition(const Mat& cocounts);

/// Y_CF = W C: one Markov step from each user's prior holdings distribution.
ScoreMatrix cf_scores(const PortfolioMatrix& w, const TransitionMatrix& c, int threads = 1);

}  // namespace mptcf
