#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace mptcf::plots {

namespace fs = std::filesystem;

/// Log-binned histogram of risk aversions over [lo, hi]. Emits
/// "bin_lo,bin_hi,count" rows plus an SVG bar chart. An empty input produces a
/// header-only csv and an empty chart.
void gamma_histogram(const fs::path& csv_path, const fs::path& svg_path,
                     const std::vector<double>& gammas, double lo, double hi,
                     int bins = 40);

/// A labelled point in the risk-return plane.
struct Marker {
  std::string kind;   // user | optimal | stock | post_addition
  std::string label;  // asset id or free text
  double risk = 0.0;
  double expected_return = 0.0;
};

/// Frontier curve plus markers (user portfolio, best portfolio at the user's
/// gamma, candidate stocks and the post-addition portfolios).
void risk_return(const fs::path& csv_path, const fs::path& svg_path,
                 const std::vector<std::pair<double, double>>& frontier,
                 const std::vector<Marker>& markers);

}  // namespace mptcf::plots
