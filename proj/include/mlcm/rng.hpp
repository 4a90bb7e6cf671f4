#pragma once

#include <cstdint>
#include <random>

#include "mlcm/types.hpp"

namespace mlcm {

// splitmix64 finalizer; used to derive independent stream seeds from one
// base seed so concurrent consumers never share an engine state.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Stream k of a base seed. Stream 0 drives truth generation, stream k >= 1
// drives base model k; benchmark seeds feed in as the base.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  return splitmix64(base + 0x9e3779b97f4a7c15ULL * (stream + 1));
}

// mt19937_64 with a fixed 53-bit uniform mapping, so sequences are
// bit-identical across platforms (std::uniform_real_distribution is not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  // Uniform integer in [0, bound), bound >= 1. Acceptance-free scaling keeps
  // the draw count per call fixed; the bias is < 2^-53 for the tiny bounds
  // used here.
  Index below(Index bound) {
    return static_cast<Index>(uniform() * static_cast<double>(bound));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mlcm
