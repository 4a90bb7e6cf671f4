#include "mlcm/synth.hpp"

#include "mlcm/rng.hpp"

namespace mlcm {

namespace {

bool degenerate(const Matrix& m, Index row) {
  double sum = m.row(row).sum();
  return sum == 0.0 || sum == static_cast<double>(m.cols());
}

// Flip one uniformly chosen entry so the row has both classes present.
void force_fix(Matrix& m, Index row, Rng& rng) {
  Index j = rng.below(m.cols());
  m(row, j) = m.row(row).sum() == 0.0 ? 1.0 : 0.0;
}

}  // namespace

void SynthSpec::validate(Index model_count) const {
  if (instances < 1) {
    throw Error("infeasible-spec", "instances must be at least 1");
  }
  if (labels < 2) {
    throw Error("infeasible-spec",
                "labels must be at least 2 so rows can stay non-degenerate");
  }
  if (prototypes < 1) {
    throw Error("infeasible-spec", "prototypes must be at least 1");
  }
  if (prototype_density < 0.0 || prototype_density > 1.0) {
    throw Error("infeasible-spec", "prototype_density must lie in [0, 1]");
  }
  if (flip_in < 0.0 || flip_in > 1.0 || flip_out < 0.0 || flip_out > 1.0) {
    throw Error("infeasible-spec", "flip rates must lie in [0, 1]");
  }
  for (double rate : model_noise) {
    if (rate < 0.0 || rate > 1.0) {
      throw Error("infeasible-spec", "model noise rates must lie in [0, 1]");
    }
  }
  if (model_noise.empty()) {
    throw Error("infeasible-spec", "model_noise must not be empty");
  }
  if (model_count > 0 && model_noise.size() != 1 &&
      static_cast<Index>(model_noise.size()) != model_count) {
    throw Error("infeasible-spec",
                "model_noise has " + std::to_string(model_noise.size()) +
                    " entries for " + std::to_string(model_count) + " models");
  }
}

double SynthSpec::noise_for(Index model) const {
  if (model_noise.size() == 1) {
    return model_noise.front();
  }
  return model_noise[static_cast<std::size_t>(model)];
}

LabelMatrix generate_truth(const SynthSpec& spec, Matrix* prototypes_out) {
  spec.validate(0);
  Rng rng(derive_seed(spec.seed, 0));

  // Prototypes are the co-occurrence skeleton; degenerate draws are retried
  // and finally patched so noise-free rows are always valid label sets.
  Matrix protos(spec.prototypes, spec.labels);
  for (Index p = 0; p < spec.prototypes; ++p) {
    for (int attempt = 0; attempt < 100; ++attempt) {
      for (Index j = 0; j < spec.labels; ++j) {
        protos(p, j) = rng.bernoulli(spec.prototype_density) ? 1.0 : 0.0;
      }
      if (!degenerate(protos, p)) break;
    }
    if (degenerate(protos, p)) {
      force_fix(protos, p, rng);
    }
  }

  Matrix truth(spec.instances, spec.labels);
  for (Index i = 0; i < spec.instances; ++i) {
    Index p = rng.below(spec.prototypes);
    for (int attempt = 0; attempt < 100; ++attempt) {
      for (Index j = 0; j < spec.labels; ++j) {
        bool in_proto = protos(p, j) == 1.0;
        bool flip = rng.bernoulli(in_proto ? spec.flip_in : spec.flip_out);
        truth(i, j) = (in_proto != flip) ? 1.0 : 0.0;
      }
      if (!degenerate(truth, i)) break;
    }
    if (degenerate(truth, i)) {
      force_fix(truth, i, rng);
    }
  }

  if (prototypes_out != nullptr) {
    *prototypes_out = protos;
  }
  return {std::move(truth)};
}

PredictionSet simulate_base_models(const LabelMatrix& truth,
                                   Index model_count, const SynthSpec& spec) {
  spec.validate(model_count);
  if (model_count < 1) {
    throw Error("infeasible-spec", "model count must be at least 1");
  }
  PredictionSet preds;
  preds.models.reserve(static_cast<std::size_t>(model_count));
  for (Index k = 0; k < model_count; ++k) {
    Rng rng(derive_seed(spec.seed, static_cast<std::uint64_t>(k) + 1));
    double noise = spec.noise_for(k);
    Matrix y(truth.rows(), truth.cols());
    for (Index i = 0; i < truth.rows(); ++i) {
      for (Index j = 0; j < truth.cols(); ++j) {
        bool flip = rng.bernoulli(noise);
        y(i, j) = (truth.values(i, j) == 1.0) != flip ? 1.0 : 0.0;
      }
    }
    preds.models.push_back({std::move(y)});
  }
  return preds;
}

}  // namespace mlcm
