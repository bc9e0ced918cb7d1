#include "mptcf/frontier.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "mptcf/parallel.hpp"

namespace mptcf {

namespace {

// Euclidean projection onto {w >= 0, sum w = 1} (sort-based algorithm).
Vec project_to_simplex(const Vec& v) {
  const long n = v.size();
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cumsum = 0.0;
  double theta = 0.0;
  long k = 0;
  for (long j = 0; j < n; ++j) {
    cumsum += u[static_cast<std::size_t>(j)];
    const double t = (cumsum - 1.0) / static_cast<double>(j + 1);
    if (u[static_cast<std::size_t>(j)] - t > 0.0) {
      theta = t;
      k = j + 1;
    }
  }
  (void)k;
  return (v.array() - theta).max(0.0);
}

// Certified bound on the distance to the optimal utility: for concave f and
// any feasible w, max f - f(w) <= max_j g_j - g'w with g the gradient at w.
double duality_gap(const Vec& grad, const Vec& w) {
  return grad.maxCoeff() - grad.dot(w);
}

// Stationarity solve on a fixed support S: maximize mu_S'w - gamma w'Sigma_SS w
// subject to sum w = 1, via the bordered KKT system. Returns false when the
// system is numerically singular even after a small diagonal shift.
bool polish_on_support(const MomentEstimates& m, double gamma,
                       const std::vector<long>& support, double shift, Vec* out) {
  const long s = static_cast<long>(support.size());
  Mat kkt(s + 1, s + 1);
  for (long a = 0; a < s; ++a) {
    for (long b = 0; b < s; ++b)
      kkt(a, b) = 2.0 * gamma * m.sigma(support[static_cast<std::size_t>(a)],
                                        support[static_cast<std::size_t>(b)]);
    kkt(a, a) += shift;
    kkt(a, s) = 1.0;
    kkt(s, a) = 1.0;
  }
  kkt(s, s) = 0.0;
  Vec rhs(s + 1);
  for (long a = 0; a < s; ++a) rhs[a] = m.mu[support[static_cast<std::size_t>(a)]];
  rhs[s] = 1.0;

  Eigen::PartialPivLU<Mat> lu(kkt);
  Vec sol = lu.solve(rhs);
  if (!sol.allFinite()) return false;
  if ((kkt * sol - rhs).cwiseAbs().maxCoeff() > 1e-7) return false;

  Vec w = Vec::Zero(m.size());
  for (long a = 0; a < s; ++a) w[support[static_cast<std::size_t>(a)]] = sol[a];
  // Clip stray negatives and renormalize; acceptance is decided by the
  // measured gap, not by how we got here.
  w = w.array().max(0.0);
  const double total = w.sum();
  if (!(total > 0.0)) return false;
  w /= total;
  *out = std::move(w);
  return true;
}

FrontierPoint make_point(const MomentEstimates& m, double gamma, Vec w) {
  FrontierPoint p;
  p.gamma = gamma;
  p.expected_return = m.mu.dot(w);
  const double var = std::max(0.0, w.dot(m.sigma * w));
  p.risk = std::sqrt(var);
  p.utility_value = p.expected_return - gamma * w.dot(m.sigma * w);
  p.weights = Portfolio{std::move(w)};
  return p;
}

}  // namespace

FrontierPoint optimal_portfolio(const MomentEstimates& m, double gamma,
                                const SolverOptions& opts, SolveDiagnostics* diag) {
  const long n = m.size();
  if (n < 1) throw InvalidInput("empty asset universe");
  if (!(gamma >= 0.0)) throw InvalidInput("gamma must be >= 0");
  if (!m.mu.allFinite() || !m.sigma.allFinite()) throw NonFiniteInput("non-finite moments");

  if (n == 1) {
    if (diag) *diag = SolveDiagnostics{0, 0.0};
    return make_point(m, gamma, Vec::Ones(1));
  }

  // ||Sigma||_inf bounds the spectral norm for symmetric Sigma.
  const double sigma_norm = m.sigma.cwiseAbs().rowwise().sum().maxCoeff();
  if (gamma * sigma_norm == 0.0) {
    // Linear objective: all weight on the first max-return asset.
    long best = 0;
    m.mu.maxCoeff(&best);
    Vec w = Vec::Zero(n);
    w[best] = 1.0;
    if (diag) *diag = SolveDiagnostics{0, 0.0};
    return make_point(m, gamma, std::move(w));
  }

  const double lipschitz = 2.0 * gamma * sigma_norm;
  const double step = 1.0 / lipschitz;

  Vec w = Vec::Constant(n, 1.0 / static_cast<double>(n));
  Vec y = w;
  double t = 1.0;
  Vec grad(n);

  auto gradient_at = [&](const Vec& x) -> Vec { return m.mu - 2.0 * gamma * (m.sigma * x); };

  int iter = 0;
  for (; iter < opts.max_iterations; ++iter) {
    const Vec grad_y = gradient_at(y);
    Vec w_next = project_to_simplex(y + step * grad_y);

    grad = gradient_at(w_next);
    double gap = duality_gap(grad, w_next);
    if (gap <= opts.gap_tol) {
      if (diag) *diag = SolveDiagnostics{iter + 1, gap};
      return make_point(m, gamma, std::move(w_next));
    }

    if ((iter + 1) % opts.polish_interval == 0) {
      std::vector<long> support;
      for (long j = 0; j < n; ++j)
        if (w_next[j] > 1e-10) support.push_back(j);
      const double scale = 2.0 * gamma * sigma_norm;
      for (double shift : {0.0, 1e-14 * scale, 1e-10 * scale}) {
        Vec polished;
        if (!polish_on_support(m, gamma, support, shift, &polished)) continue;
        const Vec pgrad = gradient_at(polished);
        const double pgap = duality_gap(pgrad, polished);
        if (pgap <= opts.gap_tol) {
          if (diag) *diag = SolveDiagnostics{iter + 1, pgap};
          return make_point(m, gamma, std::move(polished));
        }
        if (pgap < gap) {  // keep the better iterate and restart momentum
          w_next = std::move(polished);
          grad = pgrad;
          gap = pgap;
          t = 1.0;
        }
        break;
      }
    }

    // Adaptive restart keeps acceleration monotone enough.
    if (grad_y.dot(w_next - w) < 0.0) t = 1.0;
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    y = w_next + ((t - 1.0) / t_next) * (w_next - w);
    w = std::move(w_next);
    t = t_next;
  }
  throw SolverDivergence("simplex QP did not reach tolerance in " +
                         std::to_string(opts.max_iterations) +
                         " iterations (gamma=" + std::to_string(gamma) + ")");
}

EfficientFrontier compute_frontier(const MomentEstimates& m,
                                   const std::vector<double>& gamma_grid,
                                   const SolverOptions& opts, int threads) {
  if (gamma_grid.empty()) throw InvalidInput("empty gamma grid");
  for (std::size_t i = 0; i < gamma_grid.size(); ++i) {
    if (!(gamma_grid[i] >= 0.0)) throw InvalidInput("gamma grid values must be >= 0");
    if (i > 0 && !(gamma_grid[i] > gamma_grid[i - 1]))
      throw InvalidInput("gamma grid must be strictly increasing");
  }

  EfficientFrontier ef;
  ef.moments = &m;
  ef.points.resize(gamma_grid.size());
  parallel_rows(static_cast<long>(gamma_grid.size()), threads, [&](long lo, long hi) {
    for (long i = lo; i < hi; ++i)
      ef.points[static_cast<std::size_t>(i)] =
          optimal_portfolio(m, gamma_grid[static_cast<std::size_t>(i)], opts);
  });

  for (std::size_t i = 1; i < ef.points.size(); ++i) {
    if (ef.points[i].risk > ef.points[i - 1].risk + 1e-7)
      throw Error("frontier risk not non-increasing in gamma");
    if (ef.points[i].expected_return > ef.points[i - 1].expected_return + 1e-7)
      throw Error("frontier return not non-increasing in gamma");
  }
  return ef;
}

FrontierRiskCurve::FrontierRiskCurve(const MomentEstimates& m, const GammaBounds& bounds,
                                     const SolverOptions& opts)
    : m_(m), bounds_(bounds), opts_(opts) {
  bounds_.validate();
}

double FrontierRiskCurve::risk_at_log_gamma(double x) {
  auto it = cache_.find(x);
  if (it != cache_.end()) return it->second;
  const double risk = optimal_portfolio(m_, std::exp(x), opts_).risk;
  cache_.emplace(x, risk);
  return risk;
}

GammaForRisk FrontierRiskCurve::gamma_for_risk(double target_risk) {
  if (!(target_risk >= 0.0)) throw InvalidInput("target risk must be >= 0");
  const double x_lo = std::log(bounds_.lo);
  const double x_hi = std::log(bounds_.hi);

  // sigma*(gamma) is non-increasing: x_lo has the largest attainable risk.
  if (target_risk >= risk_at_log_gamma(x_lo)) return {bounds_.lo, true};
  if (target_risk <= risk_at_log_gamma(x_hi)) return {bounds_.hi, true};

  const int steps = static_cast<int>(std::ceil(std::log2((x_hi - x_lo) / 1e-9)));

  // Two passes bracket the (possibly flat) level set of the target, and the
  // answer is the midpoint of that log-interval.
  const auto bisect = [&](bool strict_above) {
    double lo = x_lo, hi = x_hi;
    for (int i = 0; i < steps; ++i) {
      const double mid = 0.5 * (lo + hi);
      const double r = risk_at_log_gamma(mid);
      const bool go_right = strict_above ? (r > target_risk) : (r >= target_risk);
      (go_right ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  const double left = bisect(true);    // inf {x : sigma*(x) <= target}
  const double right = bisect(false);  // sup {x : sigma*(x) >= target}
  return {std::exp(0.5 * (left + right)), false};
}

GammaForRisk gamma_for_risk(const MomentEstimates& m, double target_risk,
                            const GammaBounds& bounds, const SolverOptions& opts) {
  FrontierRiskCurve curve(m, bounds, opts);
  return curve.gamma_for_risk(target_risk);
}

GammaEstimate estimate_user_gamma(const std::vector<DailyHolding>& days,
                                  const MomentEstimates& m, const GammaBounds& bounds,
                                  FrontierRiskCurve* curve, const SolverOptions& opts) {
  std::optional<FrontierRiskCurve> local;
  if (curve == nullptr) {
    local.emplace(m, bounds, opts);
    curve = &*local;
  }

  GammaEstimate est;
  double log_sum = 0.0;
  for (const auto& day : days) {
    if (day.values.size() != m.size())
      throw DimensionMismatch("daily holding size does not match moment universe");
    if ((day.values.array() < 0.0).any())
      throw InvalidInput("negative market value in daily holding");
    const double total = day.values.sum();
    if (!(total > 0.0)) continue;  // empty day
    const Vec w = day.values / total;
    const double risk = std::sqrt(std::max(0.0, w.dot(m.sigma * w)));
    const GammaForRisk day_gamma = curve->gamma_for_risk(risk);
    est.daily_gammas.emplace_back(day.date, day_gamma.gamma);
    if (day_gamma.clamped) ++est.clamped_days;
    log_sum += std::log(day_gamma.gamma);
  }
  if (est.daily_gammas.empty())
    throw NoValidDays("no day with a non-empty portfolio");
  est.gamma = std::exp(log_sum / static_cast<double>(est.daily_gammas.size()));
  return est;
}

}  // namespace mptcf
