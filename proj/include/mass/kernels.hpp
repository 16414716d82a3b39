#ifndef MASS_KERNELS_HPP
#define MASS_KERNELS_HPP

#include <cstddef>
#include <exception>
#include <map>
#include <vector>

#include "mass/corpus.hpp"
#include "mass/resources.hpp"
#include "mass/similarity.hpp"
#include "mass/summarizer.hpp"

namespace mass {

// Each hot loop has a serial reference and an OpenMP version. Both produce
// identical results; the serial one is what tests compare against.

// One centroid per category, ordered by category. Throws MissingCategoryError
// listing every category without reports.
std::vector<CentroidVector> build_centroids_serial(const Summarizer& summarizer, const LabeledCorpus& corpus);
std::vector<CentroidVector> build_centroids_parallel(const Summarizer& summarizer, const LabeledCorpus& corpus);

// Scores a report summary against every centroid, keyed by centroid category.
std::map<BiradsCategory, SimilarityBreakdown> score_categories_serial(const Summary& report,
                                                                      const std::vector<CentroidVector>& centroids,
                                                                      const AggregationWeights& weights,
                                                                      const Resources& resources);
std::map<BiradsCategory, SimilarityBreakdown> score_categories_parallel(const Summary& report,
                                                                        const std::vector<CentroidVector>& centroids,
                                                                        const AggregationWeights& weights,
                                                                        const Resources& resources);

namespace detail {

// Runs fn(i) for i in [0, n) across OpenMP threads. If any call throws, the
// exception of the lowest failing index is rethrown after the loop.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  std::vector<std::exception_ptr> errors(n);
  const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < count; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace detail

}  // namespace mass

#endif  // MASS_KERNELS_HPP
