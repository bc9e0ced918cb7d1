#include "mptcf/cf.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "mptcf/parallel.hpp"

namespace mptcf {

namespace {

std::vector<std::string> sorted_unique(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::unordered_map<std::string, long> index_of(const std::vector<std::string>& ids) {
  std::unordered_map<std::string, long> m;
  m.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) m.emplace(ids[i], static_cast<long>(i));
  return m;
}

}  // namespace

SnapshotStore::SnapshotStore(std::vector<SnapshotRecord> records)
    : records_(std::move(records)) {
  std::vector<std::string> users, assets;
  users.reserve(records_.size());
  assets.reserve(records_.size());
  for (const auto& r : records_) {
    if (!std::isfinite(r.market_value) || r.market_value < 0.0)
      throw InvalidInput("market value must be finite and >= 0 (user " + r.user_id +
                         ", asset " + r.asset_id + ", " + r.date.to_string() + ")");
    users.push_back(r.user_id);
    assets.push_back(r.asset_id);
  }
  user_ids_ = sorted_unique(std::move(users));
  asset_ids_ = sorted_unique(std::move(assets));

  std::sort(records_.begin(), records_.end(), [](const SnapshotRecord& a, const SnapshotRecord& b) {
    if (a.user_id != b.user_id) return a.user_id < b.user_id;
    if (a.date != b.date) return a.date < b.date;
    return a.asset_id < b.asset_id;
  });
  for (std::size_t i = 1; i < records_.size(); ++i) {
    const auto& a = records_[i - 1];
    const auto& b = records_[i];
    if (a.user_id == b.user_id && a.date == b.date && a.asset_id == b.asset_id)
      throw InvalidInput("duplicate snapshot record (user " + a.user_id + ", asset " +
                         a.asset_id + ", " + a.date.to_string() + ")");
  }
}

Date SnapshotStore::last_date() const {
  if (records_.empty()) throw InvalidInput("empty snapshot store has no last date");
  Date d = records_.front().date;
  for (const auto& r : records_)
    if (d < r.date) d = r.date;
  return d;
}

long SnapshotStore::count_off_universe(const std::vector<std::string>& universe) const {
  const auto idx = index_of(universe);
  long dropped = 0;
  for (const auto& r : records_)
    if (idx.find(r.asset_id) == idx.end()) ++dropped;
  return dropped;
}

BinaryHoldings build_R(const SnapshotStore& store, const DateRange& period,
                       const std::vector<std::string>& universe) {
  const auto users = index_of(store.user_ids());
  const auto assets = index_of(universe);
  Mat r = Mat::Zero(static_cast<long>(store.user_ids().size()),
                    static_cast<long>(universe.size()));
  for (const auto& rec : store.records()) {
    if (!period.contains(rec.date) || rec.market_value == 0.0) continue;
    const auto col = assets.find(rec.asset_id);
    if (col == assets.end()) continue;
    r(users.at(rec.user_id), col->second) = 1.0;
  }
  return BinaryHoldings{std::move(r), period};
}

PortfolioMatrix build_W(const SnapshotStore& store, const DateRange& period,
                        const std::vector<std::string>& universe) {
  const auto users = index_of(store.user_ids());
  const auto assets = index_of(universe);
  Mat w = Mat::Zero(static_cast<long>(store.user_ids().size()),
                    static_cast<long>(universe.size()));
  for (const auto& rec : store.records()) {
    if (!period.contains(rec.date)) continue;
    const auto col = assets.find(rec.asset_id);
    if (col == assets.end()) continue;
    w(users.at(rec.user_id), col->second) += rec.market_value;
  }
  for (long i = 0; i < w.rows(); ++i) {
    const double total = w.row(i).sum();
    if (total > 0.0) w.row(i) /= total;
  }
  return PortfolioMatrix{std::move(w), period};
}

Mat cocount(const BinaryHoldings& r) {
  Mat c = r.values.transpose() * r.values;
  // R'R of a 0/1 matrix is symmetric up to exact arithmetic; make it bitwise so.
  for (long j = 0; j < c.rows(); ++j)
    for (long k = j + 1; k < c.cols(); ++k) c(k, j) = c(j, k);
  return c;
}

TransitionMatrix transition(const Mat& cocounts) {
  if (cocounts.rows() != cocounts.cols())
    throw DimensionMismatch("co-count matrix must be square");
  if ((cocounts.array() < 0.0).any())
    throw InvalidInput("co-count matrix must be non-negative");
  Mat c = cocounts;
  c.diagonal().setZero();
  for (long j = 0; j < c.rows(); ++j) {
    const double total = c.row(j).sum();
    if (total > 0.0) c.row(j) /= total;
  }
  return TransitionMatrix{std::move(c)};
}

ScoreMatrix cf_scores(const PortfolioMatrix& w, const TransitionMatrix& c, int threads) {
  if (w.values.cols() != c.values.rows())
    throw DimensionMismatch("W columns (" + std::to_string(w.values.cols()) +
                            ") do not match C rows (" + std::to_string(c.values.rows()) + ")");
  Mat scores(w.values.rows(), c.values.cols());
  parallel_rows(w.values.rows(), threads, [&](long lo, long hi) {
    for (long i = lo; i < hi; ++i) scores.row(i).noalias() = w.values.row(i) * c.values;
  });
  return ScoreMatrix{std::move(scores), ScoreKind::CF};
}

}  // namespace mptcf
