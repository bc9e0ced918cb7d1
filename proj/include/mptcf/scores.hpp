#pragma once

#include "mptcf/market_model.hpp"

namespace mptcf {

enum class ScoreKind { CF, MPT, Hybrid };

/// Dense m x n matrix of per-(user, asset) recommendation scores. Hybrid
/// matrices use -inf as the "filtered out" sentinel; the other kinds are
/// fully finite.
struct ScoreMatrix {
  Mat values;
  ScoreKind kind = ScoreKind::CF;

  long users() const { return values.rows(); }
  long items() const { return values.cols(); }
};

}  // namespace mptcf
