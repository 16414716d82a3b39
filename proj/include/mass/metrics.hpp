#ifndef MASS_METRICS_HPP
#define MASS_METRICS_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mass/corpus.hpp"

namespace mass {

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  ConfusionCounts& operator+=(const ConfusionCounts& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
  bool operator==(const ConfusionCounts&) const = default;
};

// nullopt stands for an undefined ratio (zero denominator), never 0.
struct PrecisionRecall {
  std::optional<double> precision;
  std::optional<double> recall;
};

PrecisionRecall precision_recall(const ConfusionCounts& c);

// num/den truncated (not rounded) to `digits` decimals, or "n/a" when den is 0.
// Exact integer arithmetic, so 48/50 renders 0.96 rather than 0.95.
std::string truncate_fraction(std::size_t num, std::size_t den, int digits = 2);

struct CategoryMetrics {
  ConfusionCounts counts;
  std::size_t tested = 0;  // reports whose true label is this category
  PrecisionRecall pr;
};

struct EvalMetrics {
  std::map<int, CategoryMetrics> per_category;
  CategoryMetrics aggregate;  // micro: from summed counts
  std::size_t misclassified = 0;

  static EvalMetrics from_counts(const std::map<int, ConfusionCounts>& counts);
  // Pairs of (true category, predicted category).
  static EvalMetrics from_predictions(const std::vector<std::pair<BiradsCategory, BiradsCategory>>& outcomes);

  // Sum of fp equals sum of fn; holds whenever each report gets one label.
  bool fp_fn_identity_holds() const;
};

struct TermDetectionRow {
  std::string term;
  std::size_t occurrences = 0;
  std::size_t tp = 0;
  std::size_t fn = 0;
  std::size_t fp = 0;
};

struct DetectionEval {
  ConfusionCounts counts;
  PrecisionRecall pr;
  std::vector<TermDetectionRow> per_term;
};

std::string render_classifier_table(const EvalMetrics& m);
std::string render_classifier_csv(const EvalMetrics& m);
std::string render_normalizer_table(const DetectionEval& e);
std::string render_normalizer_csv(const DetectionEval& e);

}  // namespace mass

#endif  // MASS_METRICS_HPP
