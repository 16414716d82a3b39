#include "mass/kernels.hpp"

#include "mass/error.hpp"

namespace mass {
namespace {

std::vector<std::vector<Report>> group_by_category(const LabeledCorpus& corpus) {
  std::vector<std::vector<Report>> groups(BiradsCategory::kCount);
  for (const auto& r : corpus.reports()) groups[r.reported_category->index()].push_back(r);
  std::vector<int> missing;
  for (std::size_t c = 0; c < groups.size(); ++c)
    if (groups[c].empty()) missing.push_back(static_cast<int>(c));
  if (!missing.empty()) throw MissingCategoryError(std::move(missing));
  return groups;
}

}  // namespace

std::vector<CentroidVector> build_centroids_serial(const Summarizer& summarizer, const LabeledCorpus& corpus) {
  auto groups = group_by_category(corpus);
  std::vector<CentroidVector> out;
  out.reserve(groups.size());
  for (std::size_t c = 0; c < groups.size(); ++c)
    out.push_back(summarizer.build_centroid(BiradsCategory(static_cast<int>(c)), std::move(groups[c])));
  return out;
}

std::vector<CentroidVector> build_centroids_parallel(const Summarizer& summarizer, const LabeledCorpus& corpus) {
  auto groups = group_by_category(corpus);
  std::vector<CentroidVector> out(groups.size());
  detail::parallel_for(groups.size(), [&](std::size_t c) {
    out[c] = summarizer.build_centroid(BiradsCategory(static_cast<int>(c)), std::move(groups[c]));
  });
  return out;
}

std::map<BiradsCategory, SimilarityBreakdown> score_categories_serial(const Summary& report,
                                                                      const std::vector<CentroidVector>& centroids,
                                                                      const AggregationWeights& weights,
                                                                      const Resources& resources) {
  std::map<BiradsCategory, SimilarityBreakdown> out;
  for (const auto& c : centroids)
    out[c.category] = report_category_similarity(report, c.summary, weights, resources.lexical, resources.stopwords);
  return out;
}

std::map<BiradsCategory, SimilarityBreakdown> score_categories_parallel(const Summary& report,
                                                                        const std::vector<CentroidVector>& centroids,
                                                                        const AggregationWeights& weights,
                                                                        const Resources& resources) {
  std::vector<SimilarityBreakdown> scores(centroids.size());
  detail::parallel_for(centroids.size(), [&](std::size_t i) {
    scores[i] = report_category_similarity(report, centroids[i].summary, weights, resources.lexical,
                                           resources.stopwords);
  });
  std::map<BiradsCategory, SimilarityBreakdown> out;
  for (std::size_t i = 0; i < centroids.size(); ++i) out[centroids[i].category] = scores[i];
  return out;
}

}  // namespace mass
