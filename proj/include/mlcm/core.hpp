#pragma once

#include "mlcm/types.hpp"

namespace mlcm {

// Checks that the set is non-empty, shapes agree across models (and with
// truth when given) and every entry is 0 or 1. Returns its argument so call
// sites can validate inline. Model indices in errors are 1-based.
const PredictionSet& validate(const PredictionSet& preds,
                              const LabelMatrix* truth = nullptr);

void validate_binary(const LabelMatrix& matrix, const std::string& what);

// Majority-vote soft scores: per-entry fraction of models voting 1.
ScoreMatrix average_predictions(const PredictionSet& preds);

// Per-instance vote shares: votes for each label divided by the row's total
// votes; rows with no votes fall back to the uniform distribution.
ScoreMatrix row_normalized_votes(const PredictionSet& preds);

}  // namespace mlcm
