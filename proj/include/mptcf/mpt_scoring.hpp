#pragma once

#include "mptcf/cf.hpp"
#include "mptcf/scores.hpp"

namespace mptcf {

/// Per-user weight given to a newly added stock: the mean of the non-zero
/// entries of the user's portfolio row, 1 when the user holds a single asset,
/// 0 for empty rows.
struct ReplacementWeights {
  Vec values;  // m
};

/// Per-user risk aversions (the diagonal of the m x m gamma matrix).
struct GammaVector {
  Vec values;  // m
};

ReplacementWeights replacement_weights(const PortfolioMatrix& w);

/// Y_MPT by independent per-pair evaluation: entry (i,j) is the utility of
/// (1 - w_r) w + w_r e_j at the user's gamma. O(m n^3); this is the
/// equivalence oracle for the closed form below. Users with an empty portfolio
/// row are scored on e_j itself (their w_r is taken as 1).
ScoreMatrix score_naive(const PortfolioMatrix& w, const ReplacementWeights& w_r,
                        const GammaVector& gammas, const MomentEstimates& m,
                        int threads = 1);

/// Same matrix in closed form, O(m n^2):
///   W'      = ((1 - w_r) j') o W
///   Y_mu    = W' mu j' + w_r mu'
///   Y_sigma = (W' Sigma o W') j j' + (w_r o w_r) diag(Sigma)' + 2 W' Sigma o (w_r j')
///   Y_MPT   = Y_mu - diag(gamma) Y_sigma
/// with j the all-ones vector and o the elementwise product.
ScoreMatrix score_vectorized(const PortfolioMatrix& w, const ReplacementWeights& w_r,
                             const GammaVector& gammas, const MomentEstimates& m,
                             int threads = 1);

}  // namespace mptcf
