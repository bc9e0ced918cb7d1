#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "mptcf/date.hpp"
#include "mptcf/errors.hpp"

namespace mptcf {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Per-period simple returns for n assets over T periods, one row per date.
struct ReturnHistory {
  std::vector<Date> dates;          // strictly increasing, size T
  std::vector<std::string> assets;  // size n
  Mat returns;                      // T x n, every entry finite and > -1

  long periods() const { return returns.rows(); }
  long size() const { return returns.cols(); }

  /// Throws InvalidInput / NonFiniteInput on invariant violations.
  void validate() const;
};

struct DecayConfig {
  double half_life = 63.0;      // periods; ~one quarter of trading days
  double ridge_epsilon = 1e-8;  // diagonal regularizer, scaled by trace/n

  void validate() const {
    if (!(half_life > 0.0)) throw InvalidInput("half_life must be > 0");
    if (!(ridge_epsilon >= 0.0)) throw InvalidInput("ridge_epsilon must be >= 0");
  }
};

/// Expected per-period returns and their covariance.
struct MomentEstimates {
  Vec mu;                           // n
  Mat sigma;                        // n x n, symmetric PSD
  std::vector<std::string> assets;  // n

  long size() const { return mu.size(); }

  /// Checks dimension agreement, symmetry (1e-12 abs) and PSD-ness
  /// (eigenvalues >= -1e-10). The eigen-decomposition makes this O(n^3);
  /// meant for construction-time and test use.
  void validate() const;

  /// Moments restricted to a subset of asset indices (order preserved).
  MomentEstimates restricted(const std::vector<long>& idx) const;
};

/// Long-only fully-invested weight vector.
struct Portfolio {
  Vec weights;

  void validate() const;
};

/// Exponentially weighted mean and covariance of the return history.
/// Weight of the row aged `a` periods is lambda^a with lambda = 2^(-1/half_life),
/// normalized to sum 1; the covariance uses the same weights and gets
/// ridge_epsilon * (trace/n) added to its diagonal.
MomentEstimates compute_moments(const ReturnHistory& history, const DecayConfig& cfg);

/// MPT utility mu'w - gamma * w'Sigma'w.
double utility(const Vec& w, double gamma, const MomentEstimates& m);
double utility(const Portfolio& w, double gamma, const MomentEstimates& m);

}  // namespace mptcf
