#ifndef MASS_SIMILARITY_HPP
#define MASS_SIMILARITY_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mass/lexicon.hpp"
#include "mass/summarizer.hpp"
#include "mass/text.hpp"

namespace mass {

/// Dense row-major matrix of word-pair similarities in [0, 1].
class SimilarityMatrix {
 public:
  SimilarityMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  SimilarityMatrix transposed() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

struct Matching {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // sorted by row
  double total_weight = 0.0;
};

// 1 for equal stems; 1 / (1 + d) when both are in the resource (0 when their
// senses share no tree); otherwise 1 - edit_distance / max length.
double word_similarity(std::string_view a, std::string_view b, const LexicalResource& resource);

std::vector<std::string> content_stems(const Sentence& sentence, const StopWords& stopwords);

// Throws EmptyAfterStopwords when either side is empty.
SimilarityMatrix build_matrix(const std::vector<std::string>& x, const std::vector<std::string>& y,
                              const LexicalResource& resource);
SimilarityMatrix build_matrix(const Sentence& x, const Sentence& y, const LexicalResource& resource,
                              const StopWords& stopwords);

// Exact maximum-weight assignment (Hungarian method with potentials) on the
// zero-padded square matrix; padded pairs are dropped from the result.
Matching max_weight_matching(const SimilarityMatrix& weights);

// Matching weight divided by max(m, n). The two sides are put in a canonical
// order first so that swapping the arguments yields the same bits.
double sentence_similarity(std::vector<std::string> x, std::vector<std::string> y,
                           const LexicalResource& resource);
double sentence_similarity(const Sentence& x, const Sentence& y, const LexicalResource& resource,
                           const StopWords& stopwords);

struct AggregationWeights {
  double semantic = 0.6;
  double pattern = 0.2;
  double term = 0.2;

  // Non-negative and summing to 1 within 1e-9, else WeightsInvalid.
  void validate() const;
  bool operator==(const AggregationWeights&) const = default;
};

struct SimilarityBreakdown {
  double semantic = 0.0;  // mean best sentence match of the report's representatives
  double pattern = 0.0;   // cosine of chunk-pattern counts
  double term = 0.0;      // cosine of atf * idf vectors
  double total = 0.0;
};

double pattern_cosine(const Summary& a, const Summary& b);
double term_cosine(const Summary& a, const Summary& b);

SimilarityBreakdown report_category_similarity(const Summary& report, const Summary& centroid,
                                               const AggregationWeights& weights, const LexicalResource& resource,
                                               const StopWords& stopwords);

}  // namespace mass

#endif  // MASS_SIMILARITY_HPP
