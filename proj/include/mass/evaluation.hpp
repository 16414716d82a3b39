#ifndef MASS_EVALUATION_HPP
#define MASS_EVALUATION_HPP

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "mass/classifier.hpp"
#include "mass/metrics.hpp"
#include "mass/normalizer.hpp"

namespace mass {

struct Outcome {
  std::string report_id;
  BiradsCategory truth{0};
  BiradsCategory predicted{0};
};

struct ClassifierEvaluation {
  EvalMetrics metrics;
  std::vector<Outcome> outcomes;  // in test-set order
};

EvalMetrics metrics_from_outcomes(const std::vector<Outcome>& outcomes);

// Classifies every test report (in parallel) and tallies tp/fp/fn per category.
ClassifierEvaluation evaluate_classifier(const Classifier& classifier, const LabeledCorpus& test);

// Each report is classified by a model whose own category centroid was rebuilt
// without it; the other six centroids are shared. Needs at least two reports in
// every category (InvalidConfig otherwise).
ClassifierEvaluation leave_one_out(const LabeledCorpus& corpus, std::shared_ptr<const Resources> resources,
                                   const ModelConfig& config = {});

struct NormalizerDocument {
  std::string id;
  std::string text;
};

// Runs unsanctioned-term detection over each document and scores the spans
// against the gold annotations, one row per unsanctioned lexicon term.
DetectionEval evaluate_normalizer(const std::vector<NormalizerDocument>& documents,
                                  const std::vector<AnnotatedSpan>& gold, const Lexicon& lexicon);

// Directory with `<id>.txt` files and a `gold.tsv` annotation file.
DetectionEval evaluate_normalizer_dir(const std::filesystem::path& dir, const Lexicon& lexicon);

}  // namespace mass

#endif  // MASS_EVALUATION_HPP
