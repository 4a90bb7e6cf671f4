#include "mlcm/graph.hpp"

#include <cmath>

#include "mlcm/core.hpp"

namespace mlcm {

ConsensusGraph build_graph(const PredictionSet& preds,
                           std::optional<double> alpha) {
  validate(preds);
  if (alpha && (!std::isfinite(*alpha) || *alpha <= 0.0)) {
    throw Error("invalid-config", "alpha must be positive and finite");
  }
  Index n = preds.rows();
  Index l = preds.cols();
  Index m = preds.count();

  // Degrees over the full bipartite graph; dropping zero-degree nodes
  // afterwards leaves the surviving degrees unchanged.
  Vector instance_degrees = Vector::Zero(n);
  Vector group_degrees = Vector::Zero(m * l);
  for (Index k = 0; k < m; ++k) {
    const Matrix& y = preds.models[static_cast<std::size_t>(k)].values;
    instance_degrees += y.rowwise().sum();
    group_degrees.segment(k * l, l) = y.colwise().sum();
  }

  ConsensusGraph graph;
  graph.total_instances = n;
  graph.labels = l;
  graph.models = m;
  for (Index i = 0; i < n; ++i) {
    if (instance_degrees(i) > 0.0) graph.instance_ids.push_back(i);
  }
  for (Index g = 0; g < m * l; ++g) {
    if (group_degrees(g) > 0.0) graph.group_ids.push_back(g);
  }

  Index rows = static_cast<Index>(graph.instance_ids.size());
  Index cols = static_cast<Index>(graph.group_ids.size());
  graph.connections.resize(rows, cols);
  graph.label_indicator = Matrix::Zero(cols, l);
  graph.instance_degrees.resize(rows);
  graph.group_degrees.resize(cols);

  for (Index c = 0; c < cols; ++c) {
    Index g = graph.group_ids[static_cast<std::size_t>(c)];
    Index k = g / l;
    Index j = g % l;
    const Matrix& y = preds.models[static_cast<std::size_t>(k)].values;
    for (Index r = 0; r < rows; ++r) {
      graph.connections(r, c) =
          y(graph.instance_ids[static_cast<std::size_t>(r)], j);
    }
    graph.label_indicator(c, j) = 1.0;
    graph.group_degrees(c) = group_degrees(g);
  }
  for (Index r = 0; r < rows; ++r) {
    graph.instance_degrees(r) =
        instance_degrees(graph.instance_ids[static_cast<std::size_t>(r)]);
  }

  if (alpha) {
    graph.alpha = *alpha;
  } else if (cols > 0) {
    graph.alpha = graph.group_degrees.mean();
  } else {
    graph.alpha = 1.0;  // no group nodes; value is never used
  }
  graph.damping =
      graph.group_degrees.array() / (graph.alpha + graph.group_degrees.array());
  return graph;
}

Matrix transition_matrix(const ConsensusGraph& graph) {
  if ((graph.instance_degrees.array() <= 0.0).any() ||
      (graph.group_degrees.array() <= 0.0).any()) {
    throw Error("singular-degree", "graph carries a zero-degree node");
  }
  // S = Dv^-1 A' Dn^-1 A: hop from a group node to one of its instances,
  // then back out along one of that instance's votes.
  Matrix weighted = graph.instance_degrees.cwiseInverse().asDiagonal() *
                    graph.connections;
  Matrix s = graph.connections.transpose() * weighted;
  s = graph.group_degrees.cwiseInverse().asDiagonal() * s;
  return s;
}

namespace {

Matrix damped_base(const ConsensusGraph& graph) {
  return (1.0 - graph.damping.array()).matrix().asDiagonal() *
         graph.label_indicator;
}

}  // namespace

GroupDistribution solve_group_distributions(const ConsensusGraph& graph) {
  Index v = graph.connections.cols();
  if (v == 0) {
    return {Matrix::Zero(0, graph.labels)};
  }
  Matrix s = transition_matrix(graph);
  Matrix system = Matrix::Identity(v, v) - graph.damping.asDiagonal() * s;
  Matrix q = system.partialPivLu().solve(damped_base(graph));
  if (!q.allFinite()) {
    throw Error("solver-failure", "walk system produced non-finite values");
  }
  return {std::move(q)};
}

GroupDistribution solve_group_distributions_iterative(
    const ConsensusGraph& graph, double tol, int max_iters, int* iterations) {
  Index v = graph.connections.cols();
  if (v == 0) {
    if (iterations != nullptr) *iterations = 0;
    return {Matrix::Zero(0, graph.labels)};
  }
  Matrix s = transition_matrix(graph);
  Matrix base = damped_base(graph);
  Matrix q = base;
  Matrix next(v, graph.labels);
  for (int it = 1; it <= max_iters; ++it) {
    next.noalias() = graph.damping.asDiagonal() * (s * q);
    next += base;
    double change = (next - q).cwiseAbs().maxCoeff();
    q.swap(next);
    if (change <= tol) {
      if (iterations != nullptr) *iterations = it;
      return {std::move(q)};
    }
  }
  throw Error("non-convergence",
              "walk iteration did not reach tol " + std::to_string(tol) +
                  " within " + std::to_string(max_iters) + " steps");
}

ScoreMatrix instance_scores(const ConsensusGraph& graph,
                            const GroupDistribution& dist) {
  Index l = graph.labels;
  Matrix out =
      Matrix::Constant(graph.total_instances, l, 1.0 / static_cast<double>(l));
  if (graph.connections.cols() > 0) {
    Matrix active = graph.connections * dist.probabilities;
    active.array().colwise() /= graph.instance_degrees.array();
    for (Index r = 0; r < active.rows(); ++r) {
      out.row(graph.instance_ids[static_cast<std::size_t>(r)]) =
          active.row(r);
    }
  }
  return {std::move(out)};
}

ScoreMatrix mlcm_r(const PredictionSet& preds, const ConsensusConfig& config) {
  config.validate();
  ConsensusGraph graph = build_graph(preds, config.alpha);
  return instance_scores(graph, solve_group_distributions(graph));
}

ScoreMatrix bgcm_binary_relevance(const PredictionSet& preds,
                                  const ConsensusConfig& config) {
  config.validate();
  validate(preds);
  Index n = preds.rows();
  Index l = preds.cols();
  Matrix out(n, l);
  for (Index j = 0; j < l; ++j) {
    // Two-class walk per label: class 0 is the complement, class 1 the
    // label itself; every instance holds exactly one vote per model.
    PredictionSet two;
    two.models.reserve(static_cast<std::size_t>(preds.count()));
    for (const LabelMatrix& y : preds.models) {
      Matrix cols(n, 2);
      cols.col(1) = y.values.col(j);
      cols.col(0) = Matrix::Ones(n, 1) - y.values.col(j);
      two.models.push_back({std::move(cols)});
    }
    ScoreMatrix scores = mlcm_r(two, config);
    out.col(j) = scores.values.col(1);
  }
  return {std::move(out)};
}

}  // namespace mlcm
