#include "mptcf/hybrid.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace mptcf {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Indices of the k largest entries of row; ties by ascending index.
std::vector<long> top_k_indices(const Eigen::Ref<const Eigen::RowVectorXd>& row, long k) {
  std::vector<long> idx(static_cast<std::size_t>(row.size()));
  std::iota(idx.begin(), idx.end(), 0L);
  std::partial_sort(idx.begin(), idx.begin() + k, idx.end(), [&](long a, long b) {
    if (row[a] != row[b]) return row[a] > row[b];
    return a < b;
  });
  idx.resize(static_cast<std::size_t>(k));
  return idx;
}

}  // namespace

ScoreMatrix hybrid_scores(const ScoreMatrix& y_cf, const ScoreMatrix& y_mpt, long k) {
  if (y_cf.values.rows() != y_mpt.values.rows() || y_cf.values.cols() != y_mpt.values.cols())
    throw DimensionMismatch("CF and MPT score matrices differ in shape");
  const long n = y_cf.values.cols();
  if (k < 1 || k > n)
    throw InvalidCutoff("cutoff k=" + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");

  Mat h = Mat::Constant(y_cf.values.rows(), n, kNegInf);
  for (long i = 0; i < y_cf.values.rows(); ++i) {
    for (long j : top_k_indices(y_cf.values.row(i), k)) h(i, j) = y_mpt.values(i, j);
  }
  return ScoreMatrix{std::move(h), ScoreKind::Hybrid};
}

std::vector<std::vector<RankedIndex>> top_n(const ScoreMatrix& y, long n_top, const Mat* held) {
  if (n_top < 1 || n_top > y.values.cols())
    throw InvalidInput("top-N outside [1, n]");
  if (held && (held->rows() != y.values.rows() || held->cols() != y.values.cols()))
    throw DimensionMismatch("held mask shape does not match score matrix");

  std::vector<std::vector<RankedIndex>> out(static_cast<std::size_t>(y.values.rows()));
  std::vector<long> candidates;
  for (long i = 0; i < y.values.rows(); ++i) {
    candidates.clear();
    for (long j = 0; j < y.values.cols(); ++j) {
      if (y.values(i, j) == kNegInf) continue;
      if (held && (*held)(i, j) != 0.0) continue;
      candidates.push_back(j);
    }
    const long take = std::min<long>(n_top, static_cast<long>(candidates.size()));
    std::partial_sort(candidates.begin(), candidates.begin() + take, candidates.end(),
                      [&](long a, long b) {
                        if (y.values(i, a) != y.values(i, b)) return y.values(i, a) > y.values(i, b);
                        return a < b;
                      });
    auto& row = out[static_cast<std::size_t>(i)];
    row.reserve(static_cast<std::size_t>(take));
    for (long r = 0; r < take; ++r)
      row.push_back(RankedIndex{candidates[static_cast<std::size_t>(r)],
                                y.values(i, candidates[static_cast<std::size_t>(r)])});
  }
  return out;
}

std::vector<RecommendationList> make_recommendations(
    const ScoreMatrix& y_rank, const ScoreMatrix& y_mpt, const ScoreMatrix& y_cf,
    const std::vector<std::string>& user_ids, const std::vector<std::string>& asset_ids,
    long n_top, long cutoff_k, const Mat* held) {
  if (static_cast<long>(user_ids.size()) != y_rank.values.rows())
    throw DimensionMismatch("user id list does not match score rows");
  if (static_cast<long>(asset_ids.size()) != y_rank.values.cols())
    throw DimensionMismatch("asset id list does not match score columns");

  const auto ranked = top_n(y_rank, n_top, held);
  std::vector<RecommendationList> lists;
  lists.reserve(ranked.size());
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    RecommendationList list;
    list.user_id = user_ids[i];
    list.cutoff_k = cutoff_k;
    int rank = 1;
    for (const auto& item : ranked[i]) {
      const long row = static_cast<long>(i);
      list.items.push_back(RankedItem{asset_ids[static_cast<std::size_t>(item.asset)], rank++,
                                      y_mpt.values(row, item.asset),
                                      y_cf.values(row, item.asset)});
    }
    lists.push_back(std::move(list));
  }
  return lists;
}

}  // namespace mptcf
