#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "mlcm/metrics.hpp"
#include "mlcm/synth.hpp"
#include "mlcm/types.hpp"

namespace mlcm {

struct BenchSpec {
  SynthSpec synth;                 // per-run seed comes from `seeds`
  Index models = 10;
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::vector<std::string> methods;  // empty = all methods
  ConsensusConfig config;
  ApVariant ap_variant = ApVariant::AllCutoffs;
};

struct BenchCell {
  MetricReport metrics;
  bool failed = false;
  std::string error;  // code: message, when failed
};

struct BenchRow {
  std::string method;               // "bm" or a method identifier
  std::vector<BenchCell> per_seed;  // aligned with BenchSpec::seeds
};

struct BenchResult {
  BenchSpec spec;
  std::vector<BenchRow> rows;  // "bm" first, then methods in request order
};

// Per seed: synthesize truth and base predictions, run every method, score
// against truth. Seeds run in parallel (see parallel.hpp); a method failing
// on a seed marks that cell failed and the run continues. The "bm" row is
// the unweighted mean of each base model's own metrics.
BenchResult run_bench(const BenchSpec& spec);

// Deterministic serializations of the same result: sorted-key JSON (byte
// identical across runs for identical specs) and a markdown table with
// mean +/- sample std at four decimals.
nlohmann::json bench_json(const BenchResult& result);
std::string bench_markdown(const BenchResult& result);

}  // namespace mlcm
