#include "mptcf/market_model.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace mptcf {

void ReturnHistory::validate() const {
  if (returns.rows() != static_cast<long>(dates.size()))
    throw DimensionMismatch("return rows != date count");
  if (returns.cols() != static_cast<long>(assets.size()))
    throw DimensionMismatch("return cols != asset count");
  for (std::size_t i = 1; i < dates.size(); ++i)
    if (!(dates[i - 1] < dates[i]))
      throw InvalidInput("dates not strictly increasing at " + dates[i].to_string());
  if (!returns.allFinite()) throw NonFiniteInput("non-finite return in history");
  if ((returns.array() <= -1.0).any())
    throw InvalidInput("return <= -1 in history (price cannot lose more than 100%)");
}

void MomentEstimates::validate() const {
  const long n = mu.size();
  if (sigma.rows() != n || sigma.cols() != n)
    throw DimensionMismatch("sigma shape does not match mu");
  if (static_cast<long>(assets.size()) != n)
    throw DimensionMismatch("asset list does not match mu");
  if (!mu.allFinite() || !sigma.allFinite())
    throw NonFiniteInput("non-finite moment estimate");
  if ((sigma - sigma.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw InvalidInput("sigma not symmetric within 1e-12");
  Eigen::SelfAdjointEigenSolver<Mat> es(sigma, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw InvalidInput("sigma not positive semi-definite");
}

MomentEstimates MomentEstimates::restricted(const std::vector<long>& idx) const {
  MomentEstimates out;
  const long k = static_cast<long>(idx.size());
  out.mu.resize(k);
  out.sigma.resize(k, k);
  out.assets.reserve(idx.size());
  for (long a = 0; a < k; ++a) {
    out.mu[a] = mu[idx[static_cast<std::size_t>(a)]];
    out.assets.push_back(assets[static_cast<std::size_t>(idx[static_cast<std::size_t>(a)])]);
    for (long b = 0; b < k; ++b)
      out.sigma(a, b) = sigma(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]);
  }
  return out;
}

void Portfolio::validate() const {
  if (!weights.allFinite()) throw NonFiniteInput("non-finite portfolio weight");
  if ((weights.array() < 0.0).any()) throw InvalidInput("negative portfolio weight");
  if (std::abs(weights.sum() - 1.0) > 1e-9)
    throw InvalidInput("portfolio weights do not sum to 1");
}

MomentEstimates compute_moments(const ReturnHistory& history, const DecayConfig& cfg) {
  cfg.validate();
  const long T = history.periods();
  const long n = history.size();
  if (T < 2) throw EmptyHistory("need at least 2 periods, got " + std::to_string(T));
  if (!history.returns.allFinite()) throw NonFiniteInput("non-finite return in history");

  // Row t (0 = oldest) has age T-1-t; weight lambda^age, normalized to sum 1.
  const double lambda = std::pow(2.0, -1.0 / cfg.half_life);
  Vec w(T);
  for (long t = 0; t < T; ++t) w[t] = std::pow(lambda, static_cast<double>(T - 1 - t));
  w /= w.sum();

  MomentEstimates m;
  m.assets = history.assets;
  m.mu = history.returns.transpose() * w;

  const Mat centered = history.returns.rowwise() - m.mu.transpose();
  Mat sigma(n, n);
  // Weighted covariance; fill the upper triangle and mirror for exact symmetry.
  const Mat weighted = centered.array().colwise() * w.array();
  for (long j = 0; j < n; ++j) {
    for (long k = j; k < n; ++k) {
      const double v = weighted.col(j).dot(centered.col(k));
      sigma(j, k) = v;
      sigma(k, j) = v;
    }
  }
  if (n > 0) {
    const double ridge = cfg.ridge_epsilon * sigma.trace() / static_cast<double>(n);
    sigma.diagonal().array() += ridge;
  }
  m.sigma = std::move(sigma);
  return m;
}

double utility(const Vec& w, double gamma, const MomentEstimates& m) {
  if (w.size() != m.size())
    throw DimensionMismatch("portfolio has " + std::to_string(w.size()) + " weights, moments have " +
                            std::to_string(m.size()) + " assets");
  if (!(gamma >= 0.0)) throw InvalidInput("gamma must be >= 0");
  return m.mu.dot(w) - gamma * w.dot(m.sigma * w);
}

double utility(const Portfolio& w, double gamma, const MomentEstimates& m) {
  return utility(w.weights, gamma, m);
}

}  // namespace mptcf
