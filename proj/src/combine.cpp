#include "mlcm/combine.hpp"

#include "mlcm/core.hpp"
#include "mlcm/covariance.hpp"
#include "mlcm/graph.hpp"

namespace mlcm {

const std::vector<std::string>& method_names() {
  static const std::vector<std::string> names = {"mv", "bgcm-br", "mlcm-r",
                                                 "mlcm-a"};
  return names;
}

ScoreMatrix combine(const PredictionSet& preds, const std::string& method,
                    const ConsensusConfig& config) {
  if (method == "mv") {
    return average_predictions(preds);
  }
  if (method == "bgcm-br") {
    return bgcm_binary_relevance(preds, config);
  }
  if (method == "mlcm-r") {
    return mlcm_r(preds, config);
  }
  if (method == "mlcm-a") {
    return mlcm_a(preds, config);
  }
  throw Error("usage", "unknown method '" + method + "'");
}

}  // namespace mlcm
