#pragma once

#include <cstdint>
#include <vector>

#include "mlcm/types.hpp"

namespace mlcm {

// Prototype-mixture generator. Truth rows are noisy copies of one of
// `prototypes` label sets, which is what induces label co-occurrence
// structure; flip rates perturb inside (1 -> 0) and outside (0 -> 1) the
// chosen prototype. Base models then flip truth entries independently at
// their per-model noise rate.
struct SynthSpec {
  Index instances = 500;
  Index labels = 20;
  int prototypes = 5;
  double prototype_density = 0.15;
  double flip_in = 0.05;
  double flip_out = 0.02;
  std::vector<double> model_noise = {0.25};  // broadcast if one entry
  std::uint64_t seed = 0;

  void validate(Index model_count) const;  // throws Error("infeasible-spec")
  double noise_for(Index model) const;
};

// Draws truth. Every row keeps at least one and at most labels - 1 active
// labels: degenerate rows are resampled (bounded retries) and then patched.
// prototypes_out, when given, receives the prototype matrix for inspection.
LabelMatrix generate_truth(const SynthSpec& spec,
                           Matrix* prototypes_out = nullptr);

// Per-model independent entry flips at spec.noise_for(k), one derived RNG
// stream per model.
PredictionSet simulate_base_models(const LabelMatrix& truth,
                                   Index model_count, const SynthSpec& spec);

}  // namespace mlcm
