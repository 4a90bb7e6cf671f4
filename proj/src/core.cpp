#include "mlcm/core.hpp"

#include <string>

namespace mlcm {

namespace {

bool is_binary(double x) { return x == 0.0 || x == 1.0; }

}  // namespace

void validate_binary(const LabelMatrix& matrix, const std::string& what) {
  for (Index i = 0; i < matrix.rows(); ++i) {
    for (Index j = 0; j < matrix.cols(); ++j) {
      double x = matrix.values(i, j);
      if (!is_binary(x)) {
        throw Error("non-binary-entry",
                    what + " entry (" + std::to_string(i + 1) + ", " +
                        std::to_string(j + 1) + ") is " + std::to_string(x) +
                        ", expected 0 or 1");
      }
    }
  }
}

const PredictionSet& validate(const PredictionSet& preds,
                              const LabelMatrix* truth) {
  if (preds.models.empty()) {
    throw Error("dimension-mismatch", "prediction set has no models");
  }
  Index n = preds.rows();
  Index l = preds.cols();
  if (n < 1 || l < 1) {
    throw Error("empty-matrix", "model 1 has shape " + std::to_string(n) +
                                    "x" + std::to_string(l));
  }
  for (Index k = 0; k < preds.count(); ++k) {
    const LabelMatrix& y = preds.models[static_cast<std::size_t>(k)];
    if (y.rows() != n || y.cols() != l) {
      throw Error("dimension-mismatch",
                  "model " + std::to_string(k + 1) + " has shape " +
                      std::to_string(y.rows()) + "x" +
                      std::to_string(y.cols()) + ", expected " +
                      std::to_string(n) + "x" + std::to_string(l));
    }
  }
  if (truth != nullptr && (truth->rows() != n || truth->cols() != l)) {
    throw Error("dimension-mismatch",
                "truth has shape " + std::to_string(truth->rows()) + "x" +
                    std::to_string(truth->cols()) + ", expected " +
                    std::to_string(n) + "x" + std::to_string(l));
  }
  for (Index k = 0; k < preds.count(); ++k) {
    validate_binary(preds.models[static_cast<std::size_t>(k)],
                    "model " + std::to_string(k + 1));
  }
  if (truth != nullptr) {
    validate_binary(*truth, "truth");
  }
  return preds;
}

ScoreMatrix average_predictions(const PredictionSet& preds) {
  validate(preds);
  Matrix sum = Matrix::Zero(preds.rows(), preds.cols());
  for (const LabelMatrix& y : preds.models) {
    sum += y.values;
  }
  return {sum / static_cast<double>(preds.count())};
}

ScoreMatrix row_normalized_votes(const PredictionSet& preds) {
  validate(preds);
  Index n = preds.rows();
  Index l = preds.cols();
  Matrix votes = Matrix::Zero(n, l);
  for (const LabelMatrix& y : preds.models) {
    votes += y.values;
  }
  Matrix out(n, l);
  for (Index i = 0; i < n; ++i) {
    double total = votes.row(i).sum();
    if (total > 0.0) {
      out.row(i) = votes.row(i) / total;
    } else {
      out.row(i).setConstant(1.0 / static_cast<double>(l));
    }
  }
  return {out};
}

}  // namespace mlcm
