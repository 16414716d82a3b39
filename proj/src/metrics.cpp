#include "mass/metrics.hpp"

#include <fmt/format.h>

namespace mass {
namespace {

CategoryMetrics finish(ConfusionCounts counts, std::size_t tested) {
  return {counts, tested, precision_recall(counts)};
}

constexpr const char* kClassifierHeader =
    "BI-RADS Category | Total Tested Reports | Total True Positives | Total False Positive | "
    "Total False Negative | BI-RADS category Precision | BI-RADS category Recall\n";

constexpr const char* kNormalizerHeader =
    "Unsanctioned term | Number of occurrences in reports | Total identified (tp) | "
    "Total missed (fn) | Non-BI-RADS recognized as BI-RADS (fp)\n";

}  // namespace

PrecisionRecall precision_recall(const ConfusionCounts& c) {
  PrecisionRecall pr;
  if (c.tp + c.fp > 0)
    pr.precision = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
  if (c.tp + c.fn > 0)
    pr.recall = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
  return pr;
}

std::string truncate_fraction(std::size_t num, std::size_t den, int digits) {
  if (den == 0) return "n/a";
  std::size_t scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  std::size_t scaled = num * scale / den;
  if (digits == 0) return fmt::format("{}", scaled);
  return fmt::format("{}.{:0{}}", scaled / scale, scaled % scale, digits);
}

EvalMetrics EvalMetrics::from_counts(const std::map<int, ConfusionCounts>& counts) {
  EvalMetrics m;
  ConfusionCounts total;
  std::size_t tested = 0;
  for (const auto& [category, c] : counts) {
    m.per_category[category] = finish(c, c.tp + c.fn);
    total += c;
    tested += c.tp + c.fn;
  }
  m.aggregate = finish(total, tested);
  m.misclassified = total.fn;
  return m;
}

EvalMetrics EvalMetrics::from_predictions(
    const std::vector<std::pair<BiradsCategory, BiradsCategory>>& outcomes) {
  std::map<int, ConfusionCounts> counts;
  std::map<int, std::size_t> tested;
  for (auto c : BiradsCategory::all()) counts[c.value()];
  std::size_t wrong = 0;
  for (const auto& [truth, predicted] : outcomes) {
    ++tested[truth.value()];
    if (truth == predicted) {
      ++counts[truth.value()].tp;
    } else {
      ++counts[predicted.value()].fp;
      ++counts[truth.value()].fn;
      ++wrong;
    }
  }
  EvalMetrics m;
  ConfusionCounts total;
  for (const auto& [category, c] : counts) {
    m.per_category[category] = finish(c, tested[category]);
    total += c;
  }
  m.aggregate = finish(total, outcomes.size());
  m.misclassified = wrong;
  return m;
}

bool EvalMetrics::fp_fn_identity_holds() const { return aggregate.counts.fp == aggregate.counts.fn; }

std::string render_classifier_table(const EvalMetrics& m) {
  std::string out = kClassifierHeader;
  if (m.per_category.empty()) return out;
  auto row = [](const std::string& label, const CategoryMetrics& c) {
    const auto& k = c.counts;
    return fmt::format("{} {} {} {} {} {} {}\n", label, c.tested, k.tp, k.fp, k.fn,
                       truncate_fraction(k.tp, k.tp + k.fp), truncate_fraction(k.tp, k.tp + k.fn));
  };
  for (const auto& [category, c] : m.per_category) out += row(std::to_string(category), c);
  out += row("Total:", m.aggregate);
  return out;
}

std::string render_classifier_csv(const EvalMetrics& m) {
  std::string out = "category,tested,tp,fp,fn,precision,recall\n";
  if (m.per_category.empty()) return out;
  auto row = [](const std::string& label, const CategoryMetrics& c) {
    const auto& k = c.counts;
    return fmt::format("{},{},{},{},{},{},{}\n", label, c.tested, k.tp, k.fp, k.fn,
                       truncate_fraction(k.tp, k.tp + k.fp), truncate_fraction(k.tp, k.tp + k.fn));
  };
  for (const auto& [category, c] : m.per_category) out += row(std::to_string(category), c);
  out += row("total", m.aggregate);
  return out;
}

std::string render_normalizer_table(const DetectionEval& e) {
  std::string out = kNormalizerHeader;
  if (e.per_term.empty()) return out;
  std::size_t occurrences = 0;
  for (const auto& r : e.per_term) {
    out += fmt::format("{} {} {} {} {}\n", r.term, r.occurrences, r.tp, r.fn, r.fp);
    occurrences += r.occurrences;
  }
  const auto& c = e.counts;
  out += fmt::format("Total: {} {} ({}) {} ({}) {} ({})\n", occurrences, c.tp,
                     truncate_fraction(c.tp, c.tp + c.fn), c.fn, truncate_fraction(c.fn, c.tp + c.fn), c.fp,
                     truncate_fraction(c.fp, c.tp + c.fp));
  out += fmt::format("precision {} recall {}\n", truncate_fraction(c.tp, c.tp + c.fp, 3),
                     truncate_fraction(c.tp, c.tp + c.fn, 3));
  return out;
}

std::string render_normalizer_csv(const DetectionEval& e) {
  std::string out = "term,occurrences,tp,fn,fp\n";
  for (const auto& r : e.per_term)
    out += fmt::format("\"{}\",{},{},{},{}\n", r.term, r.occurrences, r.tp, r.fn, r.fp);
  return out;
}

}  // namespace mass
