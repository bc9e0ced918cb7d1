#pragma once

#include <map>
#include <utility>
#include <vector>

#include "mptcf/market_model.hpp"

namespace mptcf {

struct SolverOptions {
  double gap_tol = 1e-10;    // certified optimality-gap target (absolute)
  int max_iterations = 10000;
  int polish_interval = 25;  // active-set KKT solve attempted every so many steps
};

struct SolveDiagnostics {
  int iterations = 0;
  double gap = 0.0;  // certified bound on (optimal utility - achieved utility)
};

/// One point of the efficient frontier.
struct FrontierPoint {
  double gamma = 0.0;
  Portfolio weights;
  double risk = 0.0;             // sqrt(w'Sigma w)
  double expected_return = 0.0;  // mu'w
  double utility_value = 0.0;
};

struct EfficientFrontier {
  std::vector<FrontierPoint> points;          // ascending gamma
  const MomentEstimates* moments = nullptr;   // not owned
};

/// argmax of mu'w - gamma w'Sigma w over the simplex {w >= 0, sum w = 1}.
/// Accelerated projected gradient with periodic active-set polish; the result
/// carries a certified duality gap <= gap_tol. Throws SolverDivergence if the
/// iteration cap is reached first.
FrontierPoint optimal_portfolio(const MomentEstimates& m, double gamma,
                                const SolverOptions& opts = {},
                                SolveDiagnostics* diag = nullptr);

/// Solves every grid value independently (grid must be non-negative, strictly
/// increasing) and checks the risk / expected-return monotonicity invariant.
EfficientFrontier compute_frontier(const MomentEstimates& m,
                                   const std::vector<double>& gamma_grid,
                                   const SolverOptions& opts = {}, int threads = 1);

/// Risk-aversion search range plus the default used when estimation has no data.
struct GammaBounds {
  double lo = 1e-3;
  double hi = 1e4;
  double fallback = 20.9;  // population median of the estimated distribution

  void validate() const {
    if (!(lo > 0.0) || !(hi > lo)) throw InvalidInput("gamma bounds must satisfy 0 < lo < hi");
  }
};

struct GammaForRisk {
  double gamma = 0.0;
  bool clamped = false;  // target risk outside the attainable frontier range
};

/// Memoizes optimal-portfolio risk along log-gamma for one set of moments.
/// Bisection queries hit dyadic points of [log lo, log hi], so repeated
/// gamma_for_risk calls share solves. Values are identical to isolated solves;
/// the cache only affects speed.
class FrontierRiskCurve {
public:
  FrontierRiskCurve(const MomentEstimates& m, const GammaBounds& bounds,
                    const SolverOptions& opts = {});

  double risk_at_log_gamma(double x);
  GammaForRisk gamma_for_risk(double target_risk);

  const GammaBounds& bounds() const { return bounds_; }

private:
  const MomentEstimates& m_;
  GammaBounds bounds_;
  SolverOptions opts_;
  std::map<double, double> cache_;  // log gamma -> risk
};

/// gamma whose optimal portfolio has the given risk, by bisection on log gamma.
/// Out-of-range targets clamp to the nearest bound; a risk plateau resolves to
/// the midpoint of the matching log-interval.
GammaForRisk gamma_for_risk(const MomentEstimates& m, double target_risk,
                            const GammaBounds& bounds = {},
                            const SolverOptions& opts = {});

/// One day of user holdings: non-negative market values (or any rescaling of
/// them) aligned to the moment universe. A day is valid iff the sum is > 0.
struct DailyHolding {
  Date date;
  Vec values;
};

struct GammaEstimate {
  double gamma = 0.0;
  std::vector<std::pair<Date, double>> daily_gammas;
  int clamped_days = 0;
};

/// Geometric mean of the per-day gamma_for_risk estimates over the valid days.
/// Throws NoValidDays when every day is empty; the caller substitutes
/// bounds.fallback in that case.
GammaEstimate estimate_user_gamma(const std::vector<DailyHolding>& days,
                                  const MomentEstimates& m,
                                  const GammaBounds& bounds = {},
                                  FrontierRiskCurve* curve = nullptr,
                                  const SolverOptions& opts = {});

}  // namespace mptcf
