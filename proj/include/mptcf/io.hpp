#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "mptcf/cf.hpp"
#include "mptcf/frontier.hpp"
#include "mptcf/hybrid.hpp"

namespace mptcf::io {

namespace fs = std::filesystem;

/// 17-significant-digit formatting; every double round-trips exactly.
std::string format_double(double v);

/// Text matrix format: first line "rows cols", then one whitespace-separated
/// row per line.
void write_matrix(const fs::path& path, const Mat& m);
Mat read_matrix(const fs::path& path);
void write_vector(const fs::path& path, const Vec& v);  // stored as n x 1
Vec read_vector(const fs::path& path);

void write_lines(const fs::path& path, const std::vector<std::string>& lines);
std::vector<std::string> read_lines(const fs::path& path);

/// Price file: header "date,asset_id,close", ISO dates, close > 0. Requires a
/// complete date x asset grid; returns are close_t / close_{t-1} - 1 and the
/// history keeps the dates of the return periods (all but the first).
ReturnHistory load_prices(const fs::path& path);

/// Closes must be (T+1) x n for T return periods.
void write_prices(const fs::path& path, const std::vector<Date>& dates,
                  const std::vector<std::string>& assets, const Mat& closes);

/// Snapshot file: header "date,user_id,asset_id,market_value".
SnapshotStore load_snapshots(const fs::path& path);
void write_snapshots(const fs::path& path, const SnapshotStore& store);

/// Gamma file: header "user_id,gamma".
void write_gammas(const fs::path& path, const std::vector<std::string>& user_ids,
                  const Vec& gammas);
std::vector<std::pair<std::string, double>> read_gammas(const fs::path& path);

/// Frontier: "gamma,risk,expected_return,utility" plus per-point weights in a
/// sidecar matrix file.
void write_frontier(const fs::path& csv_path, const fs::path& weights_path,
                    const EfficientFrontier& ef);

/// Recommendations: "user_id,rank,asset_id,score_mpt,score_cf".
void write_recommendations(const fs::path& path,
                           const std::vector<RecommendationList>& lists);

}  // namespace mptcf::io
