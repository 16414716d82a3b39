#ifndef MASS_CLASSIFIER_HPP
#define MASS_CLASSIFIER_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mass/corpus.hpp"
#include "mass/resources.hpp"
#include "mass/similarity.hpp"
#include "mass/summarizer.hpp"

namespace mass {

inline constexpr const char* kModelFormatVersion = "1.0";

struct ModelConfig {
  SummarizerConfig summarizer;
  AggregationWeights weights;

  void validate() const;
  bool operator==(const ModelConfig&) const = default;
};

/// Seven trained centroids plus the settings and resource digest they were
/// built with.
struct ModelBundle {
  std::string format_version = kModelFormatVersion;
  std::string resource_digest;
  ModelConfig config;
  std::vector<CentroidVector> centroids;  // ordered by category

  // Exactly one centroid for each category 0..6, else MissingCategoryError.
  void validate() const;
  const CentroidVector& centroid(BiradsCategory category) const;
  bool operator==(const ModelBundle&) const = default;
};

struct Scorecard {
  std::map<BiradsCategory, double> scores;
  BiradsCategory inferred{0};
  std::vector<BiradsCategory> ties;  // categories sharing the top score, highest first
  std::map<BiradsCategory, SimilarityBreakdown> breakdown;

  // Needs all seven categories. The highest category among the tied maxima wins.
  static Scorecard from_scores(const std::map<BiradsCategory, double>& scores);
  static Scorecard from_breakdown(const std::map<BiradsCategory, SimilarityBreakdown>& breakdown);

  // score * 100 with two decimals, e.g. "43.40".
  std::string percent(BiradsCategory category) const;
};

enum class VerdictStatus { Consistent, Inconsistent, Unlabeled };
std::string_view to_string(VerdictStatus status);

struct ConsistencyVerdict {
  VerdictStatus status = VerdictStatus::Unlabeled;
  std::optional<BiradsCategory> reported;
  Scorecard scorecard;

  static ConsistencyVerdict from(Scorecard scorecard, std::optional<BiradsCategory> reported);
};

// Throws MissingCategoryError when a category has no reports.
ModelBundle train(const LabeledCorpus& corpus, std::shared_ptr<const Resources> resources,
                  const ModelConfig& config = {});
ModelBundle train_serial(const LabeledCorpus& corpus, std::shared_ptr<const Resources> resources,
                         const ModelConfig& config = {});

/// A model bound to the resources it was trained with.
class Classifier {
 public:
  // Throws CorruptModel when the model digest does not match the resources.
  Classifier(std::shared_ptr<const Resources> resources, ModelBundle model);

  // Same shape as a centroid, built from the report's findings alone.
  // Throws MissingFindings.
  Summary represent(const Report& report) const;

  Scorecard score(const Summary& report) const;
  Scorecard classify(const Report& report) const;
  ConsistencyVerdict check_consistency(const Report& report) const;

  // Rebuilds the centroid of the report's category with the report added.
  ModelBundle with_report(Report report) const;
  // Rebuilds one centroid from the given members.
  ModelBundle with_centroid(BiradsCategory category, std::vector<Report> members) const;

  const ModelBundle& model() const noexcept { return model_; }
  const Resources& resources() const noexcept { return *resources_; }
  std::shared_ptr<const Resources> shared_resources() const noexcept { return resources_; }
  const Summarizer& summarizer() const noexcept { return summarizer_; }

 private:
  std::shared_ptr<const Resources> resources_;
  ModelBundle model_;
  Summarizer summarizer_;
};

std::vector<Scorecard> classify_batch_serial(const Classifier& classifier, const std::vector<Report>& reports);
std::vector<Scorecard> classify_batch_parallel(const Classifier& classifier, const std::vector<Report>& reports);

}  // namespace mass

#endif  // MASS_CLASSIFIER_HPP
