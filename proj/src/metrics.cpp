#include "mlcm/metrics.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "mlcm/core.hpp"

namespace mlcm {

namespace {

void check_shapes(const ScoreMatrix& scores, const LabelMatrix& truth) {
  if (scores.rows() != truth.rows() || scores.cols() != truth.cols()) {
    throw Error("dimension-mismatch",
                "scores are " + std::to_string(scores.rows()) + "x" +
                    std::to_string(scores.cols()) + ", truth is " +
                    std::to_string(truth.rows()) + "x" +
                    std::to_string(truth.cols()));
  }
  validate_binary(truth, "truth");
}

// Pair statistics between positives and negatives of one score list:
// `above` counts (positive, negative) pairs with the positive scored
// strictly higher, `tied` counts exactly tied pairs. Both are exact
// integers, so callers can divide once and stay bit-compatible with a
// quadratic count.
struct PairCounts {
  std::int64_t above = 0;
  std::int64_t tied = 0;
  std::int64_t positives = 0;
  std::int64_t negatives = 0;
};

PairCounts count_pairs(std::vector<std::pair<double, bool>>& entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  PairCounts c;
  std::int64_t neg_below = 0;
  std::int64_t pos_below = 0;
  std::size_t i = 0;
  while (i < entries.size()) {
    std::size_t j = i;
    std::int64_t pos_here = 0;
    std::int64_t neg_here = 0;
    while (j < entries.size() && entries[j].first == entries[i].first) {
      if (entries[j].second) {
        ++pos_here;
      } else {
        ++neg_here;
      }
      ++j;
    }
    c.above += pos_here * neg_below;
    c.tied += pos_here * neg_here;
    pos_below += pos_here;
    neg_below += neg_here;
    i = j;
  }
  c.positives = pos_below;
  c.negatives = neg_below;
  return c;
}

// Fraction of (positive, negative) pairs ranked wrongly: negative above, or
// a tie under the chosen policy.
double pair_loss(const PairCounts& c, TiePolicy policy) {
  std::int64_t total = c.positives * c.negatives;
  std::int64_t wrong = total - c.above - c.tied;
  if (policy == TiePolicy::Strict) {
    return static_cast<double>(wrong + c.tied) / static_cast<double>(total);
  }
  return static_cast<double>(2 * wrong + c.tied) /
         static_cast<double>(2 * total);
}

double pair_auc(const PairCounts& c, TiePolicy policy) {
  std::int64_t total = c.positives * c.negatives;
  if (policy == TiePolicy::Strict) {
    return static_cast<double>(c.above) / static_cast<double>(total);
  }
  return static_cast<double>(2 * c.above + c.tied) /
         static_cast<double>(2 * total);
}

}  // namespace

double ranking_loss(const ScoreMatrix& scores, const LabelMatrix& truth,
                    TiePolicy policy, Index* skipped) {
  check_shapes(scores, truth);
  Index active = 0;
  double total = 0.0;
  std::vector<std::pair<double, bool>> entries;
  for (Index i = 0; i < truth.rows(); ++i) {
    entries.clear();
    for (Index j = 0; j < truth.cols(); ++j) {
      entries.emplace_back(scores.values(i, j), truth.values(i, j) == 1.0);
    }
    PairCounts c = count_pairs(entries);
    if (c.positives == 0 || c.negatives == 0) {
      continue;
    }
    total += pair_loss(c, policy);
    ++active;
  }
  if (skipped != nullptr) {
    *skipped = truth.rows() - active;
  }
  if (active == 0) {
    throw Error("all-instances-degenerate",
                "every instance has all-relevant or all-irrelevant truth");
  }
  return total / static_cast<double>(active);
}

double micro_auc(const ScoreMatrix& scores, const LabelMatrix& truth,
                 TiePolicy policy) {
  check_shapes(scores, truth);
  std::vector<std::pair<double, bool>> entries;
  entries.reserve(static_cast<std::size_t>(truth.rows() * truth.cols()));
  for (Index i = 0; i < truth.rows(); ++i) {
    for (Index j = 0; j < truth.cols(); ++j) {
      entries.emplace_back(scores.values(i, j), truth.values(i, j) == 1.0);
    }
  }
  PairCounts c = count_pairs(entries);
  if (c.positives == 0 || c.negatives == 0) {
    throw Error("degenerate-truth",
                "flattened truth needs both relevant and irrelevant entries");
  }
  return pair_auc(c, policy);
}

double one_error(const ScoreMatrix& scores, const LabelMatrix& truth,
                 Index* skipped) {
  check_shapes(scores, truth);
  Index active = 0;
  double errors = 0.0;
  for (Index i = 0; i < truth.rows(); ++i) {
    if (truth.values.row(i).sum() == 0.0) {
      continue;
    }
    Index best = 0;
    for (Index j = 1; j < truth.cols(); ++j) {
      if (scores.values(i, j) > scores.values(i, best)) {
        best = j;  // ties keep the lowest index
      }
    }
    if (truth.values(i, best) == 0.0) {
      errors += 1.0;
    }
    ++active;
  }
  if (skipped != nullptr) {
    *skipped = truth.rows() - active;
  }
  if (active == 0) {
    return 0.0;
  }
  return errors / static_cast<double>(active);
}

double average_precision(const ScoreMatrix& scores, const LabelMatrix& truth,
                         ApVariant variant) {
  check_shapes(scores, truth);
  Index n = truth.rows();
  Index l = truth.cols();
  std::vector<Index> order(static_cast<std::size_t>(l));
  double total = 0.0;
  Index active = 0;
  for (Index i = 0; i < n; ++i) {
    std::iota(order.begin(), order.end(), Index{0});
    // descending score, ties broken toward the lower label index
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
      return scores.values(i, a) > scores.values(i, b);
    });
    if (variant == ApVariant::AllCutoffs) {
      // precision averaged over every cutoff 1..l, normalized by l; rewards
      // packing relevant labels at the very top and includes every instance
      double instance = 0.0;
      Index hits = 0;
      for (Index s = 0; s < l; ++s) {
        if (truth.values(i, order[static_cast<std::size_t>(s)]) == 1.0) {
          ++hits;
        }
        instance += static_cast<double>(hits) / static_cast<double>(s + 1);
      }
      total += instance / static_cast<double>(l);
      ++active;
    } else {
      // mean precision at each relevant label's rank
      Index relevant = 0;
      double instance = 0.0;
      Index hits = 0;
      for (Index s = 0; s < l; ++s) {
        if (truth.values(i, order[static_cast<std::size_t>(s)]) == 1.0) {
          ++hits;
          instance += static_cast<double>(hits) / static_cast<double>(s + 1);
          ++relevant;
        }
      }
      if (relevant == 0) {
        continue;
      }
      total += instance / static_cast<double>(relevant);
      ++active;
    }
  }
  if (active == 0) {
    return 0.0;
  }
  return total / static_cast<double>(active);
}

MetricReport evaluate(const ScoreMatrix& scores, const LabelMatrix& truth,
                      TiePolicy policy, ApVariant variant) {
  MetricReport report;
  Index skipped = 0;
  report.ranking_loss = ranking_loss(scores, truth, policy, &skipped);
  report.micro_auc = micro_auc(scores, truth, policy);
  report.one_error = one_error(scores, truth);
  report.avg_precision = average_precision(scores, truth, variant);
  report.skipped_instances = skipped;
  return report;
}

double brute_force_ranking_loss(const ScoreMatrix& scores,
                                const LabelMatrix& truth, TiePolicy policy,
                                Index* skipped) {
  check_shapes(scores, truth);
  Index active = 0;
  double total = 0.0;
  for (Index i = 0; i < truth.rows(); ++i) {
    std::int64_t positives = 0;
    std::int64_t negatives = 0;
    std::int64_t wrong = 0;
    std::int64_t tied = 0;
    for (Index a = 0; a < truth.cols(); ++a) {
      if (truth.values(i, a) != 1.0) continue;
      ++positives;
      for (Index b = 0; b < truth.cols(); ++b) {
        if (truth.values(i, b) == 1.0) continue;
        if (scores.values(i, a) < scores.values(i, b)) ++wrong;
        if (scores.values(i, a) == scores.values(i, b)) ++tied;
      }
    }
    for (Index b = 0; b < truth.cols(); ++b) {
      if (truth.values(i, b) != 1.0) ++negatives;
    }
    if (positives == 0 || negatives == 0) continue;
    std::int64_t pairs = positives * negatives;
    if (policy == TiePolicy::Strict) {
      total += static_cast<double>(wrong + tied) / static_cast<double>(pairs);
    } else {
      total += static_cast<double>(2 * wrong + tied) /
               static_cast<double>(2 * pairs);
    }
    ++active;
  }
  if (skipped != nullptr) {
    *skipped = truth.rows() - active;
  }
  if (active == 0) {
    throw Error("all-instances-degenerate",
                "every instance has all-relevant or all-irrelevant truth");
  }
  return total / static_cast<double>(active);
}

double brute_force_micro_auc(const ScoreMatrix& scores,
                             const LabelMatrix& truth, TiePolicy policy) {
  check_shapes(scores, truth);
  std::vector<double> pos, neg;
  for (Index i = 0; i < truth.rows(); ++i) {
    for (Index j = 0; j < truth.cols(); ++j) {
      (truth.values(i, j) == 1.0 ? pos : neg).push_back(scores.values(i, j));
    }
  }
  if (pos.empty() || neg.empty()) {
    throw Error("degenerate-truth",
                "flattened truth needs both relevant and irrelevant entries");
  }
  std::int64_t above = 0;
  std::int64_t tied = 0;
  for (double p : pos) {
    for (double q : neg) {
      if (p > q) ++above;
      if (p == q) ++tied;
    }
  }
  std::int64_t total =
      static_cast<std::int64_t>(pos.size()) *
      static_cast<std::int64_t>(neg.size());
  if (policy == TiePolicy::Strict) {
    return static_cast<double>(above) / static_cast<double>(total);
  }
  return static_cast<double>(2 * above + tied) /
         static_cast<double>(2 * total);
}

}  // namespace mlcm
