#include "mass/evaluation.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>

#include "mass/error.hpp"
#include "mass/kernels.hpp"

namespace mass {

EvalMetrics metrics_from_outcomes(const std::vector<Outcome>& outcomes) {
  std::vector<std::pair<BiradsCategory, BiradsCategory>> pairs;
  pairs.reserve(outcomes.size());
  for (const auto& o : outcomes) pairs.emplace_back(o.truth, o.predicted);
  return EvalMetrics::from_predictions(pairs);
}

ClassifierEvaluation evaluate_classifier(const Classifier& classifier, const LabeledCorpus& test) {
  auto cards = classify_batch_parallel(classifier, test.reports());
  ClassifierEvaluation eval;
  for (std::size_t i = 0; i < cards.size(); ++i) {
    const auto& r = test.reports()[i];
    eval.outcomes.push_back({r.id, *r.reported_category, cards[i].inferred});
  }
  eval.metrics = metrics_from_outcomes(eval.outcomes);
  return eval;
}

ClassifierEvaluation leave_one_out(const LabeledCorpus& corpus, std::shared_ptr<const Resources> resources,
                                   const ModelConfig& config) {
  for (const auto& [category, n] : corpus.category_counts())
    if (n < 2)
      throw Error(ErrorKind::InvalidConfig,
                  fmt::format("leave-one-out needs two reports in category {}, found {}", category, n));
  auto model = train(corpus, resources, config);
  Classifier classifier(resources, model);

  const auto& reports = corpus.reports();
  std::vector<Outcome> outcomes(reports.size());
  detail::parallel_for(reports.size(), [&](std::size_t i) {
    const auto& held = reports[i];
    auto category = *held.reported_category;
    auto centroids = model.centroids;
    for (auto& c : centroids) {
      if (c.category != category) continue;
      std::vector<Report> rest;
      for (const auto& m : c.members)
        if (m.id != held.id) rest.push_back(m);
      c = classifier.summarizer().build_centroid(category, std::move(rest));
    }
    auto card = Scorecard::from_breakdown(
        score_categories_serial(classifier.represent(held), centroids, config.weights, *resources));
    outcomes[i] = {held.id, category, card.inferred};
  });

  ClassifierEvaluation eval;
  eval.outcomes = std::move(outcomes);
  eval.metrics = metrics_from_outcomes(eval.outcomes);
  return eval;
}

DetectionEval evaluate_normalizer(const std::vector<NormalizerDocument>& documents,
                                  const std::vector<AnnotatedSpan>& gold, const Lexicon& lexicon) {
  TermDetector detector(lexicon);
  std::vector<AnnotatedSpan> found;
  for (const auto& doc : documents)
    for (const auto& d : detector.detect_unsanctioned(doc.text))
      found.push_back({doc.id, d.span.start, d.span.end, d.found_term});
  return evaluate_detection(gold, found, lexicon.terms(TermKind::Unsanctioned));
}

DetectionEval evaluate_normalizer_dir(const std::filesystem::path& dir, const Lexicon& lexicon) {
  auto gold = load_gold_annotations(dir / "gold.tsv");
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.path().extension() == ".txt") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<NormalizerDocument> docs;
  for (const auto& f : files) docs.push_back({f.stem().string(), read_file(f)});
  return evaluate_normalizer(docs, gold, lexicon);
}

}  // namespace mass
