#include "mlcm/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <ostream>

#include "mlcm/bench.hpp"
#include "mlcm/combine.hpp"
#include "mlcm/covariance.hpp"
#include "mlcm/io.hpp"
#include "mlcm/metrics.hpp"
#include "mlcm/synth.hpp"

namespace fs = std::filesystem;

namespace mlcm {

namespace {

void cmd_synth(SynthSpec spec, Index models, const std::string& out_dir,
               std::ostream& out) {
  spec.validate(models);
  if (models < 1) {
    throw Error("infeasible-spec", "model count must be at least 1");
  }
  LabelMatrix truth = generate_truth(spec);
  PredictionSet preds = simulate_base_models(truth, models, spec);

  fs::create_directories(out_dir);
  save_label_matrix(truth, (fs::path(out_dir) / "truth.csv").string());
  nlohmann::json files = nlohmann::json::array();
  files.push_back("truth.csv");
  for (Index k = 0; k < models; ++k) {
    std::string name = "pred_" + std::to_string(k + 1) + ".csv";
    save_label_matrix(preds.models[static_cast<std::size_t>(k)],
                      (fs::path(out_dir) / name).string());
    files.push_back(name);
  }

  nlohmann::json echo = synth_json(spec);
  echo["models"] = models;
  echo["files"] = files;
  write_text_file((fs::path(out_dir) / "spec.json").string(),
                  echo.dump(2) + "\n");
  out << echo.dump(2) << "\n";
}

void cmd_combine(const std::vector<std::string>& inputs,
                 const std::string& method, const ConsensusConfig& config,
                 const std::string& out_path, std::ostream& out) {
  config.validate();
  PredictionSet preds = load_prediction_set(inputs);

  nlohmann::json echo;
  echo["command"] = "combine";
  echo["method"] = method;
  echo["models"] = preds.count();
  echo["instances"] = preds.rows();
  echo["labels"] = preds.cols();
  echo["config"] = config_json(config);
  echo["out"] = out_path;

  ScoreMatrix scores;
  if (method == "mlcm-a") {
    MlcmaTrace trace;
    scores = mlcm_a(preds, config, &trace);
    echo["iterations"] = trace.iterations;
    echo["step_change"] = trace.step_change;
  } else {
    scores = combine(preds, method, config);
  }
  save_scores(scores, out_path);
  out << echo.dump(2) << "\n";
}

void cmd_eval(const std::string& scores_path, const std::string& truth_path,
              const std::string& method_label, const ConsensusConfig& config,
              ApVariant variant, std::uint64_t seed,
              const std::string& out_path, std::ostream& out) {
  ScoreMatrix scores = load_scores(scores_path);
  LabelMatrix truth = load_label_matrix(truth_path);
  MetricReport metrics = evaluate(scores, truth, config.tie_policy, variant);
  nlohmann::json report = report_json(method_label, metrics, config, seed);
  report["config"]["ap_variant"] =
      variant == ApVariant::AllCutoffs ? "all-cutoffs" : "relevant-ranks";
  std::string text = report.dump(2) + "\n";
  if (!out_path.empty()) {
    write_text_file(out_path, text);
  }
  out << text;
}

void cmd_bench(const BenchSpec& spec, const std::string& out_dir,
               std::ostream& out) {
  BenchResult result = run_bench(spec);
  fs::create_directories(out_dir);
  write_text_file((fs::path(out_dir) / "report.json").string(),
                  bench_json(result).dump(2) + "\n");
  std::string table = bench_markdown(result);
  write_text_file((fs::path(out_dir) / "table.md").string(), table);
  out << table;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"consolidates multilabel predictions from independent base "
               "classifiers"};
  app.name("mlcm");
  app.require_subcommand(1);

  // synth
  auto* synth_cmd =
      app.add_subcommand("synth", "generate a synthetic truth/model corpus");
  SynthSpec synth_spec;
  Index synth_models = 10;
  std::string synth_out = ".";
  std::vector<double> synth_noise;
  synth_cmd->add_option("-n,--instances", synth_spec.instances,
                        "instance count");
  synth_cmd->add_option("-l,--labels", synth_spec.labels, "label count");
  synth_cmd->add_option("--prototypes", synth_spec.prototypes,
                        "number of label-set prototypes");
  synth_cmd->add_option("--density", synth_spec.prototype_density,
                        "per-label inclusion probability in a prototype");
  synth_cmd->add_option("--flip-in", synth_spec.flip_in,
                        "truth flip rate inside the prototype");
  synth_cmd->add_option("--flip-out", synth_spec.flip_out,
                        "truth flip rate outside the prototype");
  synth_cmd->add_option("--noise", synth_noise,
                        "per-model flip rates (single value broadcasts)");
  synth_cmd->add_option("-m,--models", synth_models, "base model count");
  synth_cmd->add_option("--seed", synth_spec.seed, "rng seed");
  synth_cmd->add_option("-o,--out", synth_out, "output directory");
  synth_cmd->callback([&]() {
    if (!synth_noise.empty()) synth_spec.model_noise = synth_noise;
    cmd_synth(synth_spec, synth_models, synth_out, out);
  });

  // combine
  auto* combine_cmd =
      app.add_subcommand("combine", "consolidate base predictions");
  std::vector<std::string> combine_inputs;
  std::string combine_method;
  std::string combine_out = "scores.csv";
  ConsensusConfig combine_config;
  double combine_alpha = 0.0;
  combine_cmd
      ->add_option("-i,--inputs", combine_inputs,
                   "per-model binary CSVs, in model order")
      ->required();
  combine_cmd->add_option("--method", combine_method, "consolidation method")
      ->required()
      ->check(CLI::IsMember(method_names()));
  combine_cmd->add_option("-o,--out", combine_out, "output score CSV");
  auto* combine_alpha_opt = combine_cmd->add_option(
      "--alpha", combine_alpha,
      "walk regularizer (default: mean group-node degree)");
  combine_cmd->add_option("--iters", combine_config.iters,
                          "covariance re-estimation rounds");
  combine_cmd->add_option("--tol", combine_config.tol,
                          "iteration stopping threshold");
  combine_cmd->add_option("--ridge", combine_config.ridge,
                          "covariance diagonal loading");
  combine_cmd->add_flag("--center", combine_config.center,
                        "center scores before the covariance estimate");
  combine_cmd->add_option("--seed", combine_config.seed, "rng seed echo");
  combine_cmd->callback([&]() {
    if (combine_alpha_opt->count() > 0) combine_config.alpha = combine_alpha;
    cmd_combine(combine_inputs, combine_method, combine_config, combine_out,
                out);
  });

  // eval
  auto* eval_cmd =
      app.add_subcommand("eval", "score a score matrix against truth");
  std::string eval_scores, eval_truth, eval_out;
  std::string eval_method = "scores";
  std::string eval_tie = "strict";
  bool eval_std_ap = false;
  std::uint64_t eval_seed = 0;
  eval_cmd->add_option("--scores", eval_scores, "score CSV")->required();
  eval_cmd->add_option("--truth", eval_truth, "binary truth CSV")->required();
  eval_cmd->add_option("--method", eval_method, "method label for the report");
  eval_cmd->add_option("--tie-policy", eval_tie, "strict or half")
      ->check(CLI::IsMember({"strict", "half"}));
  eval_cmd->add_flag("--std-ap", eval_std_ap,
                     "average precision at relevant ranks instead of all "
                     "cutoffs");
  eval_cmd->add_option("--seed", eval_seed, "seed echo for the report");
  eval_cmd->add_option("-o,--out", eval_out, "also write the report here");
  eval_cmd->callback([&]() {
    ConsensusConfig config;
    config.tie_policy = tie_policy_from_string(eval_tie);
    cmd_eval(eval_scores, eval_truth, eval_method, config,
             eval_std_ap ? ApVariant::AtRelevantRanks : ApVariant::AllCutoffs,
             eval_seed, eval_out, out);
  });

  // bench
  auto* bench_cmd = app.add_subcommand(
      "bench", "synthesize, consolidate and score across seeds");
  BenchSpec bench_spec;
  std::vector<double> bench_noise;
  std::vector<std::uint64_t> bench_seeds;
  std::vector<std::string> bench_methods;
  std::string bench_out = ".";
  std::string bench_tie = "strict";
  bool bench_std_ap = false;
  double bench_alpha = 0.0;
  bench_cmd->add_option("-n,--instances", bench_spec.synth.instances,
                        "instance count");
  bench_cmd->add_option("-l,--labels", bench_spec.synth.labels, "label count");
  bench_cmd->add_option("--prototypes", bench_spec.synth.prototypes,
                        "number of label-set prototypes");
  bench_cmd->add_option("--density", bench_spec.synth.prototype_density,
                        "per-label inclusion probability in a prototype");
  bench_cmd->add_option("--flip-in", bench_spec.synth.flip_in,
                        "truth flip rate inside the prototype");
  bench_cmd->add_option("--flip-out", bench_spec.synth.flip_out,
                        "truth flip rate outside the prototype");
  bench_cmd->add_option("--noise", bench_noise,
                        "per-model flip rates (single value broadcasts)");
  bench_cmd->add_option("-m,--models", bench_spec.models, "base model count");
  bench_cmd->add_option("--seeds", bench_seeds, "seeds, one run each");
  bench_cmd->add_option("--methods", bench_methods, "methods to compare")
      ->check(CLI::IsMember(method_names()));
  auto* bench_alpha_opt = bench_cmd->add_option(
      "--alpha", bench_alpha,
      "walk regularizer (default: mean group-node degree)");
  bench_cmd->add_option("--iters", bench_spec.config.iters,
                        "covariance re-estimation rounds");
  bench_cmd->add_option("--tol", bench_spec.config.tol,
                        "iteration stopping threshold");
  bench_cmd->add_option("--ridge", bench_spec.config.ridge,
                        "covariance diagonal loading");
  bench_cmd->add_flag("--center", bench_spec.config.center,
                      "center scores before the covariance estimate");
  bench_cmd->add_option("--tie-policy", bench_tie, "strict or half")
      ->check(CLI::IsMember({"strict", "half"}));
  bench_cmd->add_flag("--std-ap", bench_std_ap,
                      "average precision at relevant ranks");
  bench_cmd->add_option("-o,--out", bench_out, "output directory");
  bench_cmd->callback([&]() {
    if (!bench_noise.empty()) bench_spec.synth.model_noise = bench_noise;
    if (!bench_seeds.empty()) bench_spec.seeds = bench_seeds;
    bench_spec.methods = bench_methods;
    if (bench_alpha_opt->count() > 0) bench_spec.config.alpha = bench_alpha;
    bench_spec.config.tie_policy = tie_policy_from_string(bench_tie);
    bench_spec.ap_variant = bench_std_ap ? ApVariant::AtRelevantRanks
                                         : ApVariant::AllCutoffs;
    cmd_bench(bench_spec, bench_out, out);
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  } catch (const Error& e) {
    nlohmann::json j;
    j["error"]["code"] = e.code();
    j["error"]["message"] = e.what();
    err << j.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    nlohmann::json j;
    j["error"]["code"] = "internal-error";
    j["error"]["message"] = e.what();
    err << j.dump() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace mlcm
