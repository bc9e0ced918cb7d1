#include "mptcf/mpt_scoring.hpp"

#include "mptcf/parallel.hpp"

namespace mptcf {

namespace {

void check_shapes(const PortfolioMatrix& w, const ReplacementWeights& w_r,
                  const GammaVector& gammas, const MomentEstimates& m) {
  if (w.values.cols() != m.size())
    throw DimensionMismatch("W columns do not match moment universe");
  if (w_r.values.size() != w.values.rows())
    throw DimensionMismatch("replacement weights do not match W rows");
  if (gammas.values.size() != w.values.rows())
    throw DimensionMismatch("gamma vector does not match W rows");
}

// Empty rows carry w_r = 0; scoring treats them as w_r = 1 so the candidate
// stock itself is evaluated instead of a vacuous unchanged portfolio.
double effective_wr(const PortfolioMatrix& w, const ReplacementWeights& w_r, long i) {
  if (w.values.row(i).isZero(0.0)) return 1.0;
  return w_r.values[i];
}

}  // namespace

ReplacementWeights replacement_weights(const PortfolioMatrix& w) {
  Vec out(w.values.rows());
  for (long i = 0; i < w.values.rows(); ++i) {
    double sum = 0.0;
    long count = 0;
    for (long j = 0; j < w.values.cols(); ++j) {
      if (w.values(i, j) > 0.0) {
        sum += w.values(i, j);
        ++count;
      }
    }
    out[i] = count == 0 ? 0.0 : sum / static_cast<double>(count);
  }
  return ReplacementWeights{std::move(out)};
}

ScoreMatrix score_naive(const PortfolioMatrix& w, const ReplacementWeights& w_r,
                        const GammaVector& gammas, const MomentEstimates& m,
                        int threads) {
  check_shapes(w, w_r, gammas, m);
  const long n = m.size();
  Mat scores(w.values.rows(), n);
  parallel_rows(w.values.rows(), threads, [&](long lo, long hi) {
    Vec v(n);
    for (long i = lo; i < hi; ++i) {
      const double wr = effective_wr(w, w_r, i);
      const double gamma = gammas.values[i];
      for (long j = 0; j < n; ++j) {
        v = (1.0 - wr) * w.values.row(i).transpose();
        v[j] += wr;
        scores(i, j) = m.mu.dot(v) - gamma * v.dot(m.sigma * v);
      }
    }
  });
  return ScoreMatrix{std::move(scores), ScoreKind::MPT};
}

ScoreMatrix score_vectorized(const PortfolioMatrix& w, const ReplacementWeights& w_r,
                             const GammaVector& gammas, const MomentEstimates& m,
                             int threads) {
  check_shapes(w, w_r, gammas, m);
  const long n = m.size();
  const Vec sigma_diag = m.sigma.diagonal();
  Mat scores(w.values.rows(), n);
  parallel_rows(w.values.rows(), threads, [&](long lo, long hi) {
    Vec wp(n), sigma_wp(n);
    for (long i = lo; i < hi; ++i) {
      const double wr = effective_wr(w, w_r, i);
      const double gamma = gammas.values[i];
      wp = (1.0 - wr) * w.values.row(i).transpose();        // row of W'
      sigma_wp.noalias() = m.sigma * wp;                    // row of W' Sigma
      const double base_return = m.mu.dot(wp);              // W' mu
      const double base_var = wp.dot(sigma_wp);             // (W' Sigma o W') j
      scores.row(i) = (base_return + wr * m.mu.array() -
                       gamma * (base_var + wr * wr * sigma_diag.array() +
                                2.0 * wr * sigma_wp.array()))
                          .transpose();
    }
  });
  return ScoreMatrix{std::move(scores), ScoreKind::MPT};
}

}  // namespace mptcf
