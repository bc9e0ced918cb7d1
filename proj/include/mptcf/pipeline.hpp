#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mptcf/cf.hpp"
#include "mptcf/frontier.hpp"
#include "mptcf/hybrid.hpp"
#include "mptcf/mpt_scoring.hpp"

namespace mptcf {

namespace fs = std::filesystem;

/// A date window, either trailing N days from the last snapshot date or an
/// explicit [from, to] range.
struct WindowSpec {
  long trailing_days = 1;
  std::optional<DateRange> range;

  DateRange resolve(Date anchor) const {
    return range ? *range : DateRange::trailing(anchor, static_cast<int>(trailing_days));
  }
};

struct GammaSourceConfig {
  enum class Mode { Estimate, File, Fixed };
  Mode mode = Mode::Estimate;
  fs::path file;        // Mode::File: "user_id,gamma" csv; absent users get fallback
  double value = 20.9;  // Mode::Fixed
};

struct PipelineConfig {
  fs::path prices;
  fs::path snapshots;
  fs::path out_dir = "out";
  std::uint64_t seed = 42;
  int threads = 1;

  DecayConfig decay;
  GammaBounds gamma_bounds;
  WindowSpec window_r{183, std::nullopt};
  WindowSpec window_w{1, std::nullopt};
  WindowSpec window_gamma{30, std::nullopt};

  long cutoff_k = 20;
  long top_n = 5;
  bool mask_held = true;
  std::vector<std::string> methods = {"random", "mpt", "cf", "hybrid"};
  GammaSourceConfig gamma_source;
  std::optional<fs::path> eval_users;  // restrict scored/recommended rows
  long frontier_points = 50;
  std::string scoring_method = "vectorized";  // or "naive"

  void validate() const;

  /// Reads the JSON config; unknown keys are rejected to catch typos.
  static PipelineConfig load(const fs::path& path);
  std::string to_json() const;
};

struct StageTiming {
  std::string stage;
  double seconds = 0.0;
};

struct PipelineResult {
  long n_assets = 0;
  long n_users = 0;
  long n_eval_users = 0;
  long dropped_off_universe = 0;
  long gamma_fallback_users = 0;
  long gamma_clamped_days = 0;
  std::vector<StageTiming> timings;
  fs::path manifest_path;
};

/// Runs moments -> frontier -> gamma -> Y_MPT -> R/W/C -> Y_CF -> hybrid ->
/// top-N, persisting every intermediate artifact under cfg.out_dir plus a
/// run_manifest.json with config, seed and timings.
PipelineResult run_pipeline(const PipelineConfig& cfg);

/// Seeded uniform scores used by the Random baseline; row i depends only on
/// (seed, i), so any row subset or worker count yields the same values.
Mat random_score_values(long rows, long cols, std::uint64_t seed);

}  // namespace mptcf
