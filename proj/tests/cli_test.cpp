#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "mlcm/cli.hpp"
#include "mlcm/core.hpp"
#include "mlcm/io.hpp"
#include "mlcm/synth.hpp"

using namespace mlcm;
using mlcm::testing::TempDir;

namespace {

struct CliRun {
  int status;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int status = run_cli(args, out, err);
  return {status, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("missing subcommand is a usage failure") {
  CliRun r = run({});
  CHECK(r.status != 0);
}

TEST_CASE("synth writes the corpus files and echoes the spec") {
  TempDir dir("synth");
  CliRun r = run({"synth", "-n", "12", "-l", "5", "--prototypes", "2", "-m",
                  "3", "--seed", "9", "-o", dir.path()});
  REQUIRE(r.status == 0);
  CHECK(std::filesystem::exists(dir.file("truth.csv")));
  CHECK(std::filesystem::exists(dir.file("pred_1.csv")));
  CHECK(std::filesystem::exists(dir.file("pred_2.csv")));
  CHECK(std::filesystem::exists(dir.file("pred_3.csv")));
  CHECK(std::filesystem::exists(dir.file("spec.json")));

  nlohmann::json echo = nlohmann::json::parse(r.out);
  CHECK(echo["instances"] == 12);
  CHECK(echo["labels"] == 5);
  CHECK(echo["models"] == 3);
  CHECK(echo["seed"] == 9);
  CHECK(echo["files"].size() == 4);

  LabelMatrix truth = load_label_matrix(dir.file("truth.csv"));
  CHECK(truth.rows() == 12);
  CHECK(truth.cols() == 5);
  SynthSpec spec;
  spec.instances = 12;
  spec.labels = 5;
  spec.prototypes = 2;
  spec.seed = 9;
  CHECK(truth.values == generate_truth(spec).values);
}

TEST_CASE("combine mv averages the inputs and echoes an auto alpha") {
  TempDir dir("combine");
  write_text_file(dir.file("a.csv"), "1,0\n");
  write_text_file(dir.file("b.csv"), "0,0\n");
  CliRun r = run({"combine", "-i", dir.file("a.csv"), dir.file("b.csv"),
                  "--method", "mv", "-o", dir.file("scores.csv")});
  REQUIRE(r.status == 0);

  ScoreMatrix scores = load_scores(dir.file("scores.csv"));
  CHECK(scores.values(0, 0) == 0.5);
  CHECK(scores.values(0, 1) == 0.0);

  nlohmann::json echo = nlohmann::json::parse(r.out);
  CHECK(echo["command"] == "combine");
  CHECK(echo["method"] == "mv");
  CHECK(echo["models"] == 2);
  CHECK(echo["instances"] == 1);
  CHECK(echo["labels"] == 2);
  CHECK(echo["config"]["alpha"] == "auto");
  CHECK(echo["out"] == dir.file("scores.csv"));
}

TEST_CASE("combine rejects unknown methods") {
  TempDir dir("badmethod");
  write_text_file(dir.file("a.csv"), "1,0\n");
  CliRun r = run({"combine", "-i", dir.file("a.csv"), "--method", "magic"});
  CHECK(r.status != 0);
}

TEST_CASE("combine mlcm-r with a huge alpha reproduces vote fractions") {
  TempDir dir("walk");
  SynthSpec spec;
  spec.instances = 30;
  spec.labels = 6;
  spec.seed = 21;
  LabelMatrix truth = generate_truth(spec);
  PredictionSet preds = simulate_base_models(truth, 3, spec);
  std::vector<std::string> args = {"combine", "--method", "mlcm-r", "--alpha",
                                   "1e8", "-o", dir.file("scores.csv"), "-i"};
  for (std::size_t k = 0; k < preds.models.size(); ++k) {
    std::string path = dir.file("pred_" + std::to_string(k) + ".csv");
    save_label_matrix(preds.models[k], path);
    args.push_back(path);
  }
  CliRun r = run(args);
  REQUIRE(r.status == 0);

  ScoreMatrix scores = load_scores(dir.file("scores.csv"));
  ScoreMatrix votes = row_normalized_votes(preds);
  CHECK((scores.values - votes.values).cwiseAbs().maxCoeff() <= 1e-5);

  nlohmann::json echo = nlohmann::json::parse(r.out);
  CHECK(echo["config"]["alpha"] == 1e8);
}

TEST_CASE("combine mlcm-a reports its iteration trace") {
  TempDir dir("avg");
  write_text_file(dir.file("a.csv"), "1,0\n0,1\n1,1\n");
  write_text_file(dir.file("b.csv"), "1,0\n0,0\n0,1\n");
  CliRun r = run({"combine", "-i", dir.file("a.csv"), dir.file("b.csv"),
                  "--method", "mlcm-a", "--iters", "3", "-o",
                  dir.file("scores.csv")});
  REQUIRE(r.status == 0);
  nlohmann::json echo = nlohmann::json::parse(r.out);
  CHECK(echo["config"]["iters"] == 3);
  CHECK(echo["iterations"].get<int>() >= 1);
  CHECK(echo["step_change"].is_array());
  CHECK(echo["step_change"].size() ==
        static_cast<std::size_t>(echo["iterations"].get<int>()));
}

TEST_CASE("eval reports the standard metrics") {
  TempDir dir("eval");
  write_text_file(dir.file("truth.csv"), "1,0\n0,1\n");
  write_text_file(dir.file("scores.csv"), "0.9,0.1\n0.2,0.8\n");
  CliRun r = run({"eval", "--scores", dir.file("scores.csv"), "--truth",
                  dir.file("truth.csv"), "--method", "demo", "--seed", "4"});
  REQUIRE(r.status == 0);
  nlohmann::json report = nlohmann::json::parse(r.out);
  CHECK(report["method"] == "demo");
  CHECK(report["seed"] == 4);
  CHECK(report["metrics"]["micro_auc"] == 1.0);
  CHECK(report["metrics"]["one_error"] == 0.0);
  CHECK(report["metrics"]["ranking_loss"] == 0.0);
  CHECK(report["config"]["ap_variant"] == "all-cutoffs");
}

TEST_CASE("eval reproduces a known ranking loss and honors --out") {
  TempDir dir("evalrl");
  write_text_file(dir.file("truth.csv"), "1,0,1\n");
  write_text_file(dir.file("scores.csv"), "0.4,0.5,0.7\n");
  CliRun r = run({"eval", "--scores", dir.file("scores.csv"), "--truth",
                  dir.file("truth.csv"), "-o", dir.file("report.json")});
  REQUIRE(r.status == 0);
  nlohmann::json report = nlohmann::json::parse(r.out);
  CHECK(report["metrics"]["ranking_loss"] == 0.5);
  CHECK(std::filesystem::exists(dir.file("report.json")));
  CHECK(nlohmann::json::parse(slurp(dir.file("report.json"))) == report);
}

TEST_CASE("eval tie policy switches the credit for tied pairs") {
  TempDir dir("ties");
  write_text_file(dir.file("truth.csv"), "1,0\n");
  write_text_file(dir.file("scores.csv"), "0.5,0.5\n");
  CliRun strict = run({"eval", "--scores", dir.file("scores.csv"), "--truth",
                       dir.file("truth.csv")});
  CliRun half = run({"eval", "--scores", dir.file("scores.csv"), "--truth",
                     dir.file("truth.csv"), "--tie-policy", "half"});
  REQUIRE(strict.status == 0);
  REQUIRE(half.status == 0);
  CHECK(nlohmann::json::parse(strict.out)["metrics"]["ranking_loss"] == 1.0);
  CHECK(nlohmann::json::parse(half.out)["metrics"]["ranking_loss"] == 0.5);
  CHECK(nlohmann::json::parse(half.out)["config"]["tie_policy"] == "half");
}

TEST_CASE("eval --std-ap switches the average precision variant") {
  TempDir dir("ap");
  write_text_file(dir.file("truth.csv"), "1,0,0\n");
  write_text_file(dir.file("scores.csv"), "0.9,0.8,0.1\n");
  CliRun cutoffs = run({"eval", "--scores", dir.file("scores.csv"), "--truth",
                        dir.file("truth.csv")});
  CliRun ranks = run({"eval", "--scores", dir.file("scores.csv"), "--truth",
                      dir.file("truth.csv"), "--std-ap"});
  REQUIRE(cutoffs.status == 0);
  REQUIRE(ranks.status == 0);
  double ap_cutoffs =
      nlohmann::json::parse(cutoffs.out)["metrics"]["avg_precision"];
  double ap_ranks =
      nlohmann::json::parse(ranks.out)["metrics"]["avg_precision"];
  CHECK(ap_ranks == 1.0);
  CHECK(ap_cutoffs == doctest::Approx((1.0 + 0.5 + 1.0 / 3.0) / 3.0));
  CHECK(nlohmann::json::parse(ranks.out)["config"]["ap_variant"] ==
        "relevant-ranks");
}

TEST_CASE("shape mismatches exit with a structured error") {
  TempDir dir("mismatch");
  write_text_file(dir.file("a.csv"), "1,0\n");
  write_text_file(dir.file("b.csv"), "1,0\n0,1\n");
  CliRun r = run({"combine", "-i", dir.file("a.csv"), dir.file("b.csv"),
                  "--method", "mv"});
  CHECK(r.status == 1);
  nlohmann::json j = nlohmann::json::parse(r.err);
  CHECK(j["error"]["code"] == "dimension-mismatch");
  CHECK_FALSE(j["error"]["message"].get<std::string>().empty());
}

TEST_CASE("bench writes deterministic reports") {
  TempDir dir("bench");
  std::vector<std::string> base = {
      "bench", "-n",      "30", "-l",        "6",  "--prototypes", "3",
      "-m",    "3",       "--seeds", "1",    "2",  "--methods",    "mv",
      "mlcm-r", "-o"};
  std::vector<std::string> first = base;
  first.push_back(dir.file("d1"));
  std::vector<std::string> second = base;
  second.push_back(dir.file("d2"));

  CliRun r1 = run(first);
  CliRun r2 = run(second);
  REQUIRE(r1.status == 0);
  REQUIRE(r2.status == 0);
  CHECK(std::filesystem::exists(dir.file("d1") + "/report.json"));
  CHECK(std::filesystem::exists(dir.file("d1") + "/table.md"));
  CHECK(slurp(dir.file("d1") + "/report.json") ==
        slurp(dir.file("d2") + "/report.json"));
  CHECK(r1.out == r2.out);
  CHECK(r1.out.find("| mlcm-r |") != std::string::npos);

  nlohmann::json report =
      nlohmann::json::parse(slurp(dir.file("d1") + "/report.json"));
  CHECK(report["command"] == "bench");
  CHECK(report["rows"].size() == 3);  // bm, mv, mlcm-r
  CHECK(report["seeds"] == nlohmann::json::array({1, 2}));
}
