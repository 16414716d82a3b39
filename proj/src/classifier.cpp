#include "mass/classifier.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "mass/error.hpp"
#include "mass/kernels.hpp"

namespace mass {

void ModelConfig::validate() const {
  summarizer.validate();
  weights.validate();
}

void ModelBundle::validate() const {
  std::vector<int> seen(BiradsCategory::kCount, 0);
  for (const auto& c : centroids) ++seen[c.category.index()];
  std::vector<int> missing;
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (seen[i] > 1)
      throw Error(ErrorKind::CorruptModel, fmt::format("category {} has {} centroids", i, seen[i]));
    if (seen[i] == 0) missing.push_back(static_cast<int>(i));
  }
  if (!missing.empty()) throw MissingCategoryError(std::move(missing));
}

const CentroidVector& ModelBundle::centroid(BiradsCategory category) const {
  for (const auto& c : centroids)
    if (c.category == category) return c;
  throw MissingCategoryError({category.value()});
}

Scorecard Scorecard::from_scores(const std::map<BiradsCategory, double>& scores) {
  std::vector<int> missing;
  for (auto c : BiradsCategory::all())
    if (!scores.contains(c)) missing.push_back(c.value());
  if (!missing.empty()) throw MissingCategoryError(std::move(missing));

  Scorecard card;
  card.scores = scores;
  double best = -1.0;
  for (const auto& [c, s] : scores) best = std::max(best, s);
  for (auto it = scores.rbegin(); it != scores.rend(); ++it)
    if (it->second == best) card.ties.push_back(it->first);
  card.inferred = card.ties.front();
  return card;
}

Scorecard Scorecard::from_breakdown(const std::map<BiradsCategory, SimilarityBreakdown>& breakdown) {
  std::map<BiradsCategory, double> scores;
  for (const auto& [c, b] : breakdown) scores[c] = b.total;
  auto card = from_scores(scores);
  card.breakdown = breakdown;
  return card;
}

std::string Scorecard::percent(BiradsCategory category) const {
  return fmt::format("{:.2f}", scores.at(category) * 100.0);
}

std::string_view to_string(VerdictStatus status) {
  switch (status) {
    case VerdictStatus::Consistent: return "consistent";
    case VerdictStatus::Inconsistent: return "inconsistent";
    case VerdictStatus::Unlabeled: return "unlabeled";
  }
  return "unlabeled";
}

ConsistencyVerdict ConsistencyVerdict::from(Scorecard scorecard, std::optional<BiradsCategory> reported) {
  ConsistencyVerdict v;
  v.reported = reported;
  if (!reported)
    v.status = VerdictStatus::Unlabeled;
  else
    v.status = *reported == scorecard.inferred ? VerdictStatus::Consistent : VerdictStatus::Inconsistent;
  v.scorecard = std::move(scorecard);
  return v;
}

namespace {

ModelBundle make_bundle(const std::shared_ptr<const Resources>& resources, const ModelConfig& config,
                        std::vector<CentroidVector> centroids) {
  ModelBundle bundle;
  bundle.resource_digest = resources->digest();
  bundle.config = config;
  bundle.centroids = std::move(centroids);
  return bundle;
}

}  // namespace

ModelBundle train(const LabeledCorpus& corpus, std::shared_ptr<const Resources> resources, const ModelConfig& config) {
  config.validate();
  Summarizer summarizer(resources, config.summarizer);
  return make_bundle(resources, config, build_centroids_parallel(summarizer, corpus));
}

ModelBundle train_serial(const LabeledCorpus& corpus, std::shared_ptr<const Resources> resources,
                         const ModelConfig& config) {
  config.validate();
  Summarizer summarizer(resources, config.summarizer);
  return make_bundle(resources, config, build_centroids_serial(summarizer, corpus));
}

Classifier::Classifier(std::shared_ptr<const Resources> resources, ModelBundle model)
    : resources_(std::move(resources)), model_(std::move(model)), summarizer_(resources_, model_.config.summarizer) {
  model_.validate();
  model_.config.validate();
  if (model_.resource_digest != resources_->digest())
    throw Error(ErrorKind::CorruptModel, "model was trained with different resources");
}

Summary Classifier::represent(const Report& report) const {
  if (!report.has_findings())
    throw Error(ErrorKind::MissingFindings, fmt::format("report '{}' has no findings", report.id));
  return summarizer_.summarize({report});
}

Scorecard Classifier::score(const Summary& report) const {
  return Scorecard::from_breakdown(score_categories_parallel(report, model_.centroids, model_.config.weights,
                                                             *resources_));
}

Scorecard Classifier::classify(const Report& report) const { return score(represent(report)); }

ConsistencyVerdict Classifier::check_consistency(const Report& report) const {
  return ConsistencyVerdict::from(classify(report), report.reported_category);
}

ModelBundle Classifier::with_report(Report report) const {
  if (!report.reported_category)
    throw Error(ErrorKind::UnlabeledReport, fmt::format("report '{}' has no category", report.id));
  const auto& current = model_.centroid(*report.reported_category);
  for (const auto& m : current.members)
    if (m.id == report.id) throw Error(ErrorKind::DuplicateId, fmt::format("report '{}' already trained", report.id));
  auto members = current.members;
  members.push_back(std::move(report));
  return with_centroid(current.category, std::move(members));
}

ModelBundle Classifier::with_centroid(BiradsCategory category, std::vector<Report> members) const {
  ModelBundle next = model_;
  for (auto& c : next.centroids)
    if (c.category == category) c = summarizer_.build_centroid(category, std::move(members));
  return next;
}

std::vector<Scorecard> classify_batch_serial(const Classifier& classifier, const std::vector<Report>& reports) {
  const auto& model = classifier.model();
  std::vector<Scorecard> out;
  out.reserve(reports.size());
  for (const auto& r : reports)
    out.push_back(Scorecard::from_breakdown(score_categories_serial(classifier.represent(r), model.centroids,
                                                                    model.config.weights, classifier.resources())));
  return out;
}

std::vector<Scorecard> classify_batch_parallel(const Classifier& classifier, const std::vector<Report>& reports) {
  const auto& model = classifier.model();
  std::vector<Scorecard> out(reports.size());
  detail::parallel_for(reports.size(), [&](std::size_t i) {
    out[i] = Scorecard::from_breakdown(score_categories_serial(classifier.represent(reports[i]), model.centroids,
                                                               model.config.weights, classifier.resources()));
  });
  return out;
}

}  // namespace mass
