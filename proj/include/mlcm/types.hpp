#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mlcm {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Exception carrying a stable machine-readable code alongside the human
// message. Codes: "parse-error", "ragged-row", "empty-matrix",
// "dimension-mismatch", "non-binary-entry", "singular-degree",
// "non-convergence", "solver-failure", "degenerate-truth",
// "all-instances-degenerate", "infeasible-spec", "invalid-config", "usage",
// "io-error".
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

// How rank-based metrics score exact score ties between a relevant and an
// irrelevant label: Strict counts the pair as fully violated, Half credits
// half a violation.
enum class TiePolicy { Strict, Half };

TiePolicy tie_policy_from_string(const std::string& name);
std::string to_string(TiePolicy policy);

// Binary instance-by-label matrix (entries 0/1).
struct LabelMatrix {
  Matrix values;

  Index rows() const { return values.rows(); }
  Index cols() const { return values.cols(); }
};

// Ordered per-model binary predictions, all with one shared shape.
struct PredictionSet {
  std::vector<LabelMatrix> models;

  Index count() const { return static_cast<Index>(models.size()); }
  Index rows() const { return models.empty() ? 0 : models.front().rows(); }
  Index cols() const { return models.empty() ? 0 : models.front().cols(); }
};

// Real-valued instance-by-label scores; consolidation outputs lie in [0, 1].
struct ScoreMatrix {
  Matrix values;

  Index rows() const { return values.rows(); }
  Index cols() const { return values.cols(); }
};

// Shared knobs for the consolidation methods.
//
// alpha regularizes the label-graph random walk: group nodes are damped by
// d_j / (alpha + d_j). Empty means "auto": use the mean degree of the
// retained group nodes, which keeps damping meaningful across graph sizes.
struct ConsensusConfig {
  std::optional<double> alpha;      // empty = mean group-node degree
  int iters = 1;                    // covariance re-estimation rounds
  double tol = 1e-8;                // iterative-solver stopping threshold
  double ridge = 1e-6;              // diagonal loading for covariance
  TiePolicy tie_policy = TiePolicy::Strict;
  bool center = false;              // center scores before covariance
  std::uint64_t seed = 0;

  void validate() const;            // throws Error("invalid-config")
};

}  // namespace mlcm
