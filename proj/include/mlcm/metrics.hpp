#pragma once

#include "mlcm/types.hpp"

namespace mlcm {

// Average-precision flavor: AllCutoffs averages precision over every prefix
// length 1..l and divides by l (favors instances whose relevant labels pack
// the top ranks); AtRelevantRanks is the conventional mean precision at the
// rank of each relevant label.
enum class ApVariant { AllCutoffs, AtRelevantRanks };

struct MetricReport {
  double micro_auc = 0.0;
  double one_error = 0.0;
  double ranking_loss = 0.0;
  double avg_precision = 0.0;
  Index skipped_instances = 0;
};

// Mean fraction of (relevant, irrelevant) label pairs ranked in the wrong
// order, per instance. Instances whose relevant or irrelevant set is empty
// are skipped (count reported via skipped); if every instance is skipped
// raises Error("all-instances-degenerate").
double ranking_loss(const ScoreMatrix& scores, const LabelMatrix& truth,
                    TiePolicy policy = TiePolicy::Strict,
                    Index* skipped = nullptr);

// AUC over the flattened score/truth arrays. Raises
// Error("degenerate-truth") when the positives or negatives are empty.
double micro_auc(const ScoreMatrix& scores, const LabelMatrix& truth,
                 TiePolicy policy = TiePolicy::Strict);

// Fraction of instances whose top-scored label (ties -> lowest index) is
// irrelevant. Instances with no relevant label are skipped; 0.0 if all are.
double one_error(const ScoreMatrix& scores, const LabelMatrix& truth,
                 Index* skipped = nullptr);

double average_precision(const ScoreMatrix& scores, const LabelMatrix& truth,
                         ApVariant variant = ApVariant::AllCutoffs);

MetricReport evaluate(const ScoreMatrix& scores, const LabelMatrix& truth,
                      TiePolicy policy = TiePolicy::Strict,
                      ApVariant variant = ApVariant::AllCutoffs);

// Quadratic-time reference implementations; the fast paths above must agree
// with these exactly (both count integer pair statistics, divided once).
double brute_force_ranking_loss(const ScoreMatrix& scores,
                                const LabelMatrix& truth, TiePolicy policy,
                                Index* skipped = nullptr);
double brute_force_micro_auc(const ScoreMatrix& scores,
                             const LabelMatrix& truth, TiePolicy policy);

}  // namespace mlcm
