#pragma once

#include <optional>
#include <vector>

#include "mlcm/types.hpp"

namespace mlcm {

// Bipartite consensus graph between instances and group nodes. Group node
// (k, j) stands for "model k predicted label j"; it connects to every
// instance model k assigned label j. Zero-degree instances and group nodes
// are dropped at construction: the stored blocks cover active rows/columns
// only, with instance_ids / group_ids mapping back to the originals.
struct ConsensusGraph {
  Matrix connections;      // active instances x active group nodes (0/1)
  Matrix label_indicator;  // active group nodes x labels, one-hot rows
  Vector instance_degrees; // row sums of connections, all > 0
  Vector group_degrees;    // column sums of connections, all > 0
  Vector damping;          // d_j / (alpha + d_j) per active group node
  std::vector<Index> instance_ids;
  std::vector<Index> group_ids;  // original flat id k * labels + j
  Index total_instances = 0;
  Index labels = 0;
  Index models = 0;
  double alpha = 0.0;
};

// Per-group-node label distributions (rows sum to 1).
struct GroupDistribution {
  Matrix probabilities;  // active group nodes x labels
};

// alpha empty = mean degree of the retained group nodes.
ConsensusGraph build_graph(const PredictionSet& preds,
                           std::optional<double> alpha = std::nullopt);

// Row-stochastic group-to-group transition: hop to a shared instance
// (uniform over a node's edges), then back out to one of that instance's
// group nodes. Raises Error("singular-degree") if any degree is zero.
Matrix transition_matrix(const ConsensusGraph& graph);

// Stationary label distributions of the damped walk: each node mixes its
// own label (weight 1 - damping) with its transition neighbours' solved
// distributions. Closed form via one LU factorization of (I - D S).
GroupDistribution solve_group_distributions(const ConsensusGraph& graph);

// Fixed-point iteration oracle for the same system; geometric convergence
// since damping < 1. Raises Error("non-convergence") past max_iters.
GroupDistribution solve_group_distributions_iterative(
    const ConsensusGraph& graph, double tol, int max_iters = 10000,
    int* iterations = nullptr);

// Instance scores: mean of the distributions of the group nodes an instance
// touches. Dropped (zero-degree) instances get the uniform row 1/l.
ScoreMatrix instance_scores(const ConsensusGraph& graph,
                            const GroupDistribution& dist);

// Full pipeline: graph, closed-form solve, instance aggregation.
ScoreMatrix mlcm_r(const PredictionSet& preds, const ConsensusConfig& config);

// Binary-relevance baseline: an independent two-class walk per label (the
// label versus its complement); column scores are the positive-class mass.
ScoreMatrix bgcm_binary_relevance(const PredictionSet& preds,
                                  const ConsensusConfig& config);

}  // namespace mlcm
