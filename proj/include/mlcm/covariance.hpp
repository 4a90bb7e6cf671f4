#pragma once

#include <vector>

#include "mlcm/types.hpp"

namespace mlcm {

struct CovarianceMatrix {
  Matrix values;  // labels x labels, symmetric positive definite
};

// Second-moment label covariance Y'Y / n with ridge * I diagonal loading.
// center = true subtracts column means first (classic covariance).
CovarianceMatrix estimate_covariance(const Matrix& scores, double ridge,
                                     bool center = false);

// One regularized-averaging update: the minimizer of
//   m ||Ybar - Y||^2 + tr(Y Omega^{-1} Y'),
// computed as Y = m * Ybar * Omega * (I + m Omega)^{-1} via a Cholesky
// solve, never an explicit inverse.
Matrix mlcm_a_step(const Matrix& mean_scores, const CovarianceMatrix& omega,
                   Index model_count);

struct MlcmaTrace {
  std::vector<double> step_change;  // max-abs iterate change per round
  Matrix raw_scores;                // final iterate before rescaling
  CovarianceMatrix covariance;      // covariance behind the final step
  int iterations = 0;
};

// Covariance-regularized averaging: estimate the label covariance, take the
// closed-form step, optionally re-estimate from the new iterate (iters
// rounds total), then min-max rescale the result to [0, 1].
ScoreMatrix mlcm_a(const PredictionSet& preds, const ConsensusConfig& config,
                   MlcmaTrace* trace = nullptr);

}  // namespace mlcm
