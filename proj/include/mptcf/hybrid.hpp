#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mptcf/scores.hpp"

namespace mptcf {

/// Per-user top-k CF shortlist re-scored by MPT: entries at the user's top-k
/// CF indices carry their Y_MPT values, everything else is -inf. CF ties at
/// the k-boundary break by ascending asset index.
ScoreMatrix hybrid_scores(const ScoreMatrix& y_cf, const ScoreMatrix& y_mpt, long k);

struct RankedIndex {
  long asset = 0;
  double score = 0.0;
};

/// Per-user top-N finite entries of Y, descending score, ties by ascending
/// asset index. When `held` is given (non-zero = held), held assets are
/// excluded before ranking. Users with fewer than N finite scores get shorter
/// lists.
std::vector<std::vector<RankedIndex>> top_n(const ScoreMatrix& y, long n_top,
                                            const Mat* held = nullptr);

struct RankedItem {
  std::string asset_id;
  int rank = 0;  // 1-based
  double mpt_score = 0.0;
  double cf_score = 0.0;
};

struct RecommendationList {
  std::string user_id;
  long cutoff_k = 0;
  std::vector<RankedItem> items;
};

/// Assembles display lists: ranks by `y_rank` via top_n and annotates each item
/// with its MPT and CF scores.
std::vector<RecommendationList> make_recommendations(
    const ScoreMatrix& y_rank, const ScoreMatrix& y_mpt, const ScoreMatrix& y_cf,
    const std::vector<std::string>& user_ids, const std::vector<std::string>& asset_ids,
    long n_top, long cutoff_k, const Mat* held = nullptr);

}  // namespace mptcf
