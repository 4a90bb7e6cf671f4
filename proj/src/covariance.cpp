#include "mlcm/covariance.hpp"

#include <Eigen/Cholesky>

#include <cmath>

#include "mlcm/core.hpp"

namespace mlcm {

CovarianceMatrix estimate_covariance(const Matrix& scores, double ridge,
                                     bool center) {
  Index n = scores.rows();
  Index l = scores.cols();
  if (n < 1 || l < 1) {
    throw Error("empty-matrix", "covariance needs a non-empty score matrix");
  }
  Matrix omega;
  if (center) {
    Matrix shifted = scores.rowwise() - scores.colwise().mean();
    omega = shifted.transpose() * shifted / static_cast<double>(n);
  } else {
    omega = scores.transpose() * scores / static_cast<double>(n);
  }
  omega.diagonal().array() += ridge;
  return {std::move(omega)};
}

Matrix mlcm_a_step(const Matrix& mean_scores, const CovarianceMatrix& omega,
                   Index model_count) {
  Index l = mean_scores.cols();
  if (omega.values.rows() != l || omega.values.cols() != l) {
    throw Error("dimension-mismatch",
                "covariance is " + std::to_string(omega.values.rows()) + "x" +
                    std::to_string(omega.values.cols()) + ", labels are " +
                    std::to_string(l));
  }
  double m = static_cast<double>(model_count);
  // Y = m Ybar Omega (I + m Omega)^{-1}, taken transposed so one SPD
  // Cholesky solve covers all instances at once.
  Matrix system = Matrix::Identity(l, l) + m * omega.values;
  Matrix rhs = m * omega.values * mean_scores.transpose();
  Eigen::LLT<Matrix> llt(system);
  if (llt.info() != Eigen::Success) {
    throw Error("solver-failure", "I + m*Omega is not positive definite");
  }
  Matrix solution = llt.solve(rhs);
  double scale = std::max(1.0, rhs.cwiseAbs().maxCoeff());
  double residual = (system * solution - rhs).cwiseAbs().maxCoeff();
  if (!solution.allFinite() || residual > 1e-10 * scale) {
    throw Error("solver-failure", "regularized-averaging solve residual " +
                                      std::to_string(residual));
  }
  return solution.transpose();
}

ScoreMatrix mlcm_a(const PredictionSet& preds, const ConsensusConfig& config,
                   MlcmaTrace* trace) {
  config.validate();
  validate(preds);
  Matrix mean_scores = average_predictions(preds).values;
  Matrix current = mean_scores;
  CovarianceMatrix omega;
  int rounds = 0;
  std::vector<double> changes;
  for (int it = 0; it < config.iters; ++it) {
    omega = estimate_covariance(current, config.ridge, config.center);
    Matrix next = mlcm_a_step(mean_scores, omega, preds.count());
    double change = (next - current).cwiseAbs().maxCoeff();
    changes.push_back(change);
    current = std::move(next);
    ++rounds;
    if (change < config.tol) {
      break;
    }
  }
  if (trace != nullptr) {
    trace->step_change = changes;
    trace->raw_scores = current;
    trace->covariance = omega;
    trace->iterations = rounds;
  }
  // report scores on a common [0, 1] scale; ranges at rounding level carry
  // no ordering information, so they collapse to the constant fallback
  // instead of amplifying noise across [0, 1]
  double lo = current.minCoeff();
  double hi = current.maxCoeff();
  Matrix scaled;
  if (hi - lo > 1e-12 * std::max(1.0, std::abs(hi))) {
    scaled = (current.array() - lo) / (hi - lo);
  } else {
    scaled = Matrix::Constant(current.rows(), current.cols(), 0.5);
  }
  return {std::move(scaled)};
}

}  // namespace mlcm
