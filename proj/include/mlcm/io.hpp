#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "mlcm/metrics.hpp"
#include "mlcm/synth.hpp"
#include "mlcm/types.hpp"

namespace mlcm {

// Comma-separated 0/1 integers, no header. Raises Error("parse-error") with
// the 1-based line number for malformed entries, Error("ragged-row") for
// inconsistent row lengths and Error("empty-matrix") for empty input.
LabelMatrix load_label_matrix(const std::string& path);

// Loads one CSV per model, in model order, then validates the set.
PredictionSet load_prediction_set(const std::vector<std::string>& paths);

// Comma-separated doubles, no header.
ScoreMatrix load_scores(const std::string& path);

void save_label_matrix(const LabelMatrix& matrix, const std::string& path);

// Writes 17 significant digits so load(save(x)) round-trips bitwise.
void save_scores(const ScoreMatrix& scores, const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// JSON echoes of the run configuration; alpha serializes as "auto" when
// unset so reports always show the resolved policy.
nlohmann::json config_json(const ConsensusConfig& config);
nlohmann::json synth_json(const SynthSpec& spec);

// Evaluation report: {"method", "metrics", "config", "seed"}.
nlohmann::json report_json(const std::string& method,
                           const MetricReport& metrics,
                           const ConsensusConfig& config, std::uint64_t seed);

}  // namespace mlcm
