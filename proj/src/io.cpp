#include "mlcm/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "mlcm/core.hpp"

namespace mlcm {

namespace {

// Raw rows of comma-separated tokens; trailing blank lines are ignored.
std::vector<std::vector<std::string>> read_csv_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("io-error", "cannot open " + path);
  }
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    lines.push_back(line);
  }
  while (!lines.empty() && lines.back().empty()) {
    lines.pop_back();
  }
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) {
      throw Error("parse-error",
                  path + ":" + std::to_string(i + 1) + ": empty row");
    }
    std::vector<std::string> fields;
    std::stringstream ss(lines[i]);
    std::string field;
    while (std::getline(ss, field, ',')) {
      // tolerate surrounding spaces
      std::size_t a = field.find_first_not_of(" \t");
      std::size_t b = field.find_last_not_of(" \t");
      fields.push_back(a == std::string::npos
                           ? std::string()
                           : field.substr(a, b - a + 1));
    }
    if (!lines[i].empty() && lines[i].back() == ',') {
      fields.emplace_back();
    }
    rows.push_back(std::move(fields));
  }
  if (rows.empty()) {
    throw Error("empty-matrix", path + ": no rows");
  }
  return rows;
}

Matrix parse_matrix(const std::string& path, bool binary) {
  auto rows = read_csv_rows(path);
  Index n = static_cast<Index>(rows.size());
  Index l = static_cast<Index>(rows.front().size());
  Matrix m(n, l);
  for (Index i = 0; i < n; ++i) {
    const auto& fields = rows[static_cast<std::size_t>(i)];
    if (static_cast<Index>(fields.size()) != l) {
      throw Error("ragged-row", path + ":" + std::to_string(i + 1) + ": " +
                                    std::to_string(fields.size()) +
                                    " columns, expected " + std::to_string(l));
    }
    for (Index j = 0; j < l; ++j) {
      const std::string& tok = fields[static_cast<std::size_t>(j)];
      std::string where = path + ":" + std::to_string(i + 1);
      if (binary) {
        if (tok == "0") {
          m(i, j) = 0.0;
        } else if (tok == "1") {
          m(i, j) = 1.0;
        } else {
          throw Error("parse-error",
                      where + ": entry '" + tok + "' is not 0 or 1");
        }
      } else {
        const char* begin = tok.c_str();
        char* end = nullptr;
        double value = std::strtod(begin, &end);
        if (tok.empty() || end != begin + tok.size()) {
          throw Error("parse-error",
                      where + ": entry '" + tok + "' is not a number");
        }
        m(i, j) = value;
      }
    }
  }
  return m;
}

}  // namespace

LabelMatrix load_label_matrix(const std::string& path) {
  return {parse_matrix(path, /*binary=*/true)};
}

PredictionSet load_prediction_set(const std::vector<std::string>& paths) {
  PredictionSet preds;
  preds.models.reserve(paths.size());
  for (const std::string& path : paths) {
    preds.models.push_back(load_label_matrix(path));
  }
  validate(preds);
  return preds;
}

ScoreMatrix load_scores(const std::string& path) {
  return {parse_matrix(path, /*binary=*/false)};
}

void save_label_matrix(const LabelMatrix& matrix, const std::string& path) {
  validate_binary(matrix, "output");
  std::ofstream out(path);
  if (!out) {
    throw Error("io-error", "cannot write " + path);
  }
  for (Index i = 0; i < matrix.rows(); ++i) {
    for (Index j = 0; j < matrix.cols(); ++j) {
      if (j > 0) out << ',';
      out << static_cast<int>(matrix.values(i, j));
    }
    out << '\n';
  }
}

void save_scores(const ScoreMatrix& scores, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error("io-error", "cannot write " + path);
  }
  char buffer[40];
  for (Index i = 0; i < scores.rows(); ++i) {
    for (Index j = 0; j < scores.cols(); ++j) {
      std::snprintf(buffer, sizeof(buffer), "%.17g", scores.values(i, j));
      if (j > 0) out << ',';
      out << buffer;
    }
    out << '\n';
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("io-error", "cannot open " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("io-error", "cannot write " + path);
  }
  out << content;
}

nlohmann::json config_json(const ConsensusConfig& config) {
  nlohmann::json j;
  if (config.alpha) {
    j["alpha"] = *config.alpha;
  } else {
    j["alpha"] = "auto";
  }
  j["iters"] = config.iters;
  j["tol"] = config.tol;
  j["ridge"] = config.ridge;
  j["tie_policy"] = to_string(config.tie_policy);
  j["center"] = config.center;
  return j;
}

nlohmann::json synth_json(const SynthSpec& spec) {
  nlohmann::json j;
  j["instances"] = spec.instances;
  j["labels"] = spec.labels;
  j["prototypes"] = spec.prototypes;
  j["prototype_density"] = spec.prototype_density;
  j["flip_in"] = spec.flip_in;
  j["flip_out"] = spec.flip_out;
  j["model_noise"] = spec.model_noise;
  j["seed"] = spec.seed;
  return j;
}

nlohmann::json report_json(const std::string& method,
                           const MetricReport& metrics,
                           const ConsensusConfig& config,
                           std::uint64_t seed) {
  nlohmann::json j;
  j["method"] = method;
  j["metrics"] = {{"micro_auc", metrics.micro_auc},
                  {"one_error", metrics.one_error},
                  {"ranking_loss", metrics.ranking_loss},
                  {"avg_precision", metrics.avg_precision},
                  {"skipped_instances", metrics.skipped_instances}};
  j["config"] = config_json(config);
  j["seed"] = seed;
  return j;
}

}  // namespace mlcm
