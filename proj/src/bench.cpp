#include "mlcm/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "mlcm/combine.hpp"
#include "mlcm/io.hpp"
#include "mlcm/parallel.hpp"

namespace mlcm {

namespace {

const std::vector<std::pair<std::string, double MetricReport::*>>&
metric_fields() {
  static const std::vector<std::pair<std::string, double MetricReport::*>>
      fields = {{"micro_auc", &MetricReport::micro_auc},
                {"one_error", &MetricReport::one_error},
                {"ranking_loss", &MetricReport::ranking_loss},
                {"avg_precision", &MetricReport::avg_precision}};
  return fields;
}

struct SeedOutcome {
  BenchCell base;                  // per-model mean ("bm")
  std::vector<BenchCell> methods;  // aligned with the method list
};

BenchCell failed_cell(const Error& e) {
  BenchCell cell;
  cell.failed = true;
  cell.error = e.code() + ": " + e.what();
  return cell;
}

}  // namespace

BenchResult run_bench(const BenchSpec& spec) {
  spec.config.validate();
  spec.synth.validate(spec.models);
  if (spec.models < 1) {
    throw Error("invalid-config", "bench needs at least one model");
  }
  if (spec.seeds.empty()) {
    throw Error("invalid-config", "bench needs at least one seed");
  }
  std::vector<std::string> methods =
      spec.methods.empty() ? method_names() : spec.methods;
  for (const std::string& method : methods) {
    const auto& known = method_names();
    if (std::find(known.begin(), known.end(), method) == known.end()) {
      throw Error("usage", "unknown method '" + method + "'");
    }
  }

  std::vector<SeedOutcome> outcomes(spec.seeds.size());
  parallel_for(static_cast<Index>(spec.seeds.size()), [&](Index si) {
    SeedOutcome& outcome = outcomes[static_cast<std::size_t>(si)];
    outcome.methods.resize(methods.size());
    SynthSpec synth = spec.synth;
    synth.seed = spec.seeds[static_cast<std::size_t>(si)];
    LabelMatrix truth;
    PredictionSet preds;
    try {
      truth = generate_truth(synth);
      preds = simulate_base_models(truth, spec.models, synth);
    } catch (const Error& e) {
      outcome.base = failed_cell(e);
      for (BenchCell& cell : outcome.methods) cell = failed_cell(e);
      return;
    }
    try {
      MetricReport mean;
      Index skipped = 0;
      for (const LabelMatrix& y : preds.models) {
        MetricReport r = evaluate({y.values}, truth, spec.config.tie_policy,
                                  spec.ap_variant);
        mean.micro_auc += r.micro_auc;
        mean.one_error += r.one_error;
        mean.ranking_loss += r.ranking_loss;
        mean.avg_precision += r.avg_precision;
        skipped = r.skipped_instances;  // depends on truth only
      }
      double m = static_cast<double>(preds.count());
      mean.micro_auc /= m;
      mean.one_error /= m;
      mean.ranking_loss /= m;
      mean.avg_precision /= m;
      mean.skipped_instances = skipped;
      outcome.base.metrics = mean;
    } catch (const Error& e) {
      outcome.base = failed_cell(e);
    }
    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
      try {
        ScoreMatrix scores = combine(preds, methods[mi], spec.config);
        outcome.methods[mi] = {evaluate(scores, truth, spec.config.tie_policy,
                                        spec.ap_variant),
                               false,
                               {}};
      } catch (const Error& e) {
        outcome.methods[mi] = failed_cell(e);
      }
    }
  });

  BenchResult result;
  result.spec = spec;
  result.spec.methods = methods;
  BenchRow base{"bm", {}};
  for (const SeedOutcome& o : outcomes) base.per_seed.push_back(o.base);
  result.rows.push_back(std::move(base));
  for (std::size_t mi = 0; mi < methods.size(); ++mi) {
    BenchRow row{methods[mi], {}};
    for (const SeedOutcome& o : outcomes) row.per_seed.push_back(o.methods[mi]);
    result.rows.push_back(std::move(row));
  }
  return result;
}

namespace {

struct Summary {
  double mean = 0.0;
  double stddev = 0.0;
  Index count = 0;
};

Summary summarize(const BenchRow& row, double MetricReport::*field) {
  Summary s;
  for (const BenchCell& cell : row.per_seed) {
    if (cell.failed) continue;
    s.mean += cell.metrics.*field;
    ++s.count;
  }
  if (s.count == 0) return s;
  s.mean /= static_cast<double>(s.count);
  if (s.count > 1) {
    double ss = 0.0;
    for (const BenchCell& cell : row.per_seed) {
      if (cell.failed) continue;
      double d = cell.metrics.*field - s.mean;
      ss += d * d;
    }
    s.stddev = std::sqrt(ss / static_cast<double>(s.count - 1));
  }
  return s;
}

}  // namespace

nlohmann::json bench_json(const BenchResult& result) {
  nlohmann::json j;
  j["command"] = "bench";
  j["synth"] = synth_json(result.spec.synth);
  j["synth"].erase("seed");  // per-run seeds live in "seeds"
  j["models"] = result.spec.models;
  j["seeds"] = result.spec.seeds;
  j["config"] = config_json(result.spec.config);
  j["ap_variant"] = result.spec.ap_variant == ApVariant::AllCutoffs
                        ? "all-cutoffs"
                        : "relevant-ranks";
  j["rows"] = nlohmann::json::array();
  for (const BenchRow& row : result.rows) {
    nlohmann::json r;
    r["method"] = row.method;
    nlohmann::json mean, stddev, per_seed;
    for (const auto& [name, field] : metric_fields()) {
      Summary s = summarize(row, field);
      mean[name] = s.count > 0 ? nlohmann::json(s.mean) : nlohmann::json();
      stddev[name] = s.count > 0 ? nlohmann::json(s.stddev) : nlohmann::json();
      nlohmann::json values = nlohmann::json::array();
      for (const BenchCell& cell : row.per_seed) {
        values.push_back(cell.failed ? nlohmann::json()
                                     : nlohmann::json(cell.metrics.*field));
      }
      per_seed[name] = values;
    }
    r["mean"] = mean;
    r["std"] = stddev;
    r["per_seed"] = per_seed;
    nlohmann::json failures = nlohmann::json::array();
    for (std::size_t si = 0; si < row.per_seed.size(); ++si) {
      if (row.per_seed[si].failed) {
        failures.push_back({{"seed", result.spec.seeds[si]},
                            {"error", row.per_seed[si].error}});
      }
    }
    r["failures"] = failures;
    j["rows"].push_back(r);
  }
  return j;
}

std::string bench_markdown(const BenchResult& result) {
  std::ostringstream out;
  out << "| method | microAUC | one error | ranking loss | avg precision |\n";
  out << "|---|---|---|---|---|\n";
  char buffer[64];
  for (const BenchRow& row : result.rows) {
    Index failed = 0;
    for (const BenchCell& cell : row.per_seed) {
      if (cell.failed) ++failed;
    }
    out << "| " << row.method;
    if (failed > 0) {
      out << " (" << failed << " seed" << (failed > 1 ? "s" : "")
          << " failed)";
    }
    out << " |";
    for (const auto& [name, field] : metric_fields()) {
      Summary s = summarize(row, field);
      if (s.count == 0) {
        out << " failed |";
        continue;
      }
      std::snprintf(buffer, sizeof(buffer), " %.4f ± %.4f |", s.mean,
                    s.stddev);
      out << buffer;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace mlcm
