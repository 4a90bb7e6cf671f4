#include <cmath>

#include "mlcm/types.hpp"

namespace mlcm {

TiePolicy tie_policy_from_string(const std::string& name) {
  if (name == "strict") return TiePolicy::Strict;
  if (name == "half") return TiePolicy::Half;
  throw Error("usage", "unknown tie policy '" + name +
                           "', expected 'strict' or 'half'");
}

std::string to_string(TiePolicy policy) {
  return policy == TiePolicy::Strict ? "strict" : "half";
}

void ConsensusConfig::validate() const {
  if (alpha && (!std::isfinite(*alpha) || *alpha <= 0.0)) {
    throw Error("invalid-config", "alpha must be positive and finite");
  }
  if (iters < 1) {
    throw Error("invalid-config", "iters must be at least 1");
  }
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw Error("invalid-config", "tol must be positive");
  }
  if (ridge < 0.0 || !std::isfinite(ridge)) {
    throw Error("invalid-config", "ridge must be non-negative");
  }
}

}  // namespace mlcm
