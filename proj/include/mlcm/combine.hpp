#pragma once

#include <string>
#include <vector>

#include "mlcm/types.hpp"

namespace mlcm {

// Canonical method identifiers: "mv", "bgcm-br", "mlcm-r", "mlcm-a".
const std::vector<std::string>& method_names();

// Dispatches to the named consolidation method. Unknown names raise
// Error("usage").
ScoreMatrix combine(const PredictionSet& preds, const std::string& method,
                    const ConsensusConfig& config);

}  // namespace mlcm
