#pragma once

#include <Eigen/Cholesky>

#include <filesystem>
#include <string>

#include "mlcm/graph.hpp"
#include "mlcm/rng.hpp"
#include "mlcm/types.hpp"

// Shared generators and independent oracles for the test binaries.
namespace mlcm::testing {

inline Index size_between(Rng& rng, Index lo, Index hi) {
  return lo + rng.below(hi - lo + 1);
}

inline LabelMatrix random_binary(Rng& rng, Index n, Index l, double p) {
  Matrix m(n, l);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < l; ++j) {
      m(i, j) = rng.bernoulli(p) ? 1.0 : 0.0;
    }
  }
  return {std::move(m)};
}

inline PredictionSet random_predictions(Rng& rng, Index n, Index l, Index m,
                                        double p) {
  PredictionSet preds;
  for (Index k = 0; k < m; ++k) {
    preds.models.push_back(random_binary(rng, n, l, p));
  }
  return preds;
}

inline ScoreMatrix random_scores(Rng& rng, Index n, Index l) {
  Matrix m(n, l);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < l; ++j) {
      m(i, j) = rng.uniform();
    }
  }
  return {std::move(m)};
}

// Binary truth whose rows each keep both classes, for metric cases that
// should not be skipped wholesale.
inline LabelMatrix random_truth(Rng& rng, Index n, Index l, double p = 0.4) {
  LabelMatrix t = random_binary(rng, n, l, p);
  for (Index i = 0; i < n; ++i) {
    double sum = t.values.row(i).sum();
    if (sum == 0.0) t.values(i, rng.below(l)) = 1.0;
    if (sum == static_cast<double>(l)) t.values(i, rng.below(l)) = 0.0;
  }
  return t;
}

// Partial geometric series Sum_{t<=terms} (D_lambda S)^t D_{1-lambda} B —
// the defining expansion of the damped-walk solution.
inline Matrix series_oracle(const ConsensusGraph& graph, int terms) {
  Matrix s = transition_matrix(graph);
  Matrix base = (1.0 - graph.damping.array()).matrix().asDiagonal() *
                graph.label_indicator;
  Matrix sum = base;
  Matrix term = base;
  for (int t = 0; t < terms; ++t) {
    term = graph.damping.asDiagonal() * (s * term);
    sum += term;
  }
  return sum;
}

// Instance scores recomputed through the mixture reading: pick a label group
// with probability (votes for that label)/degree, then that group's solved
// distribution averaged over the models voting for it.
inline Matrix decomposition_scores(const ConsensusGraph& graph,
                                   const Matrix& q) {
  Index rows = graph.connections.rows();
  Index l = graph.labels;
  Matrix out = Matrix::Zero(rows, l);
  for (Index r = 0; r < rows; ++r) {
    for (Index label = 0; label < l; ++label) {
      double votes = 0.0;
      Vector mixed = Vector::Zero(l);
      for (Index c = 0; c < graph.connections.cols(); ++c) {
        if (graph.group_ids[static_cast<std::size_t>(c)] % l != label)
          continue;
        if (graph.connections(r, c) == 0.0) continue;
        votes += 1.0;
        mixed += q.row(c).transpose();
      }
      if (votes == 0.0) continue;
      double p_group = votes / graph.instance_degrees(r);
      out.row(r) += p_group * (mixed / votes).transpose();
    }
  }
  return out;
}

// Consensus objective the averaging step minimizes:
// J(Y) = m ||Ybar - Y||^2 + tr(Y Omega^{-1} Y').
inline double consensus_objective(const Matrix& ybar, const Matrix& y,
                                  const Matrix& omega, double m) {
  Eigen::LLT<Matrix> llt(omega);
  Matrix solved = llt.solve(y.transpose());
  return m * (ybar - y).squaredNorm() + (y * solved).trace();
}

inline Matrix consensus_gradient(const Matrix& ybar, const Matrix& y,
                                 const Matrix& omega, double m) {
  Eigen::LLT<Matrix> llt(omega);
  Matrix solved = llt.solve(y.transpose());
  return 2.0 * m * (y - ybar) + 2.0 * solved.transpose();
}

inline double fd_gradient_entry(const Matrix& ybar, const Matrix& y,
                                const Matrix& omega, double m, Index i,
                                Index j, double h) {
  Matrix up = y;
  Matrix down = y;
  up(i, j) += h;
  down(i, j) -= h;
  return (consensus_objective(ybar, up, omega, m) -
          consensus_objective(ybar, down, omega, m)) /
         (2.0 * h);
}

// Scratch directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("mlcm_" + tag + "_" + std::to_string(++counter));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const {
    return (path_ / name).string();
  }
  std::string path() const { return path_.string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace mlcm::testing
