#ifndef MASS_SUMMARIZER_HPP
#define MASS_SUMMARIZER_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "mass/corpus.hpp"
#include "mass/normalizer.hpp"
#include "mass/resources.hpp"
#include "mass/syntax.hpp"
#include "mass/text.hpp"

namespace mass {

struct TermStats {
  std::string term;  // stem
  std::size_t raw_tf = 0;
  std::size_t df = 0;
  double atf = 0.0;  // raw_tf / max raw_tf of the corpus
  double idf = 0.0;
  bool stopword = false;

  bool operator==(const TermStats&) const = default;
};

using TermTable = std::map<std::string, TermStats>;

struct SummarizerConfig {
  std::size_t k = 12;
  double boost_factor = 2.0;
  std::string idf_formula_id = "ln-smooth-plus-one";
  // Replace unsanctioned terms with their first sanctioned suggestion before
  // tokenizing.
  bool normalize_terms = true;

  void validate() const;
  bool operator==(const SummarizerConfig&) const = default;
};

struct TermSnapshot {
  std::string term;
  double atf = 0.0;
  double idf = 0.0;

  bool operator==(const TermSnapshot&) const = default;
};

struct ScoredSentence {
  std::string report_id;
  std::size_t ordinal = 0;  // position among all sentences of the corpus
  Sentence sentence;
  double score = 0.0;
  bool boosted = false;
  std::vector<TermSnapshot> terms;
  SentenceSyntax syntax;

  bool operator==(const ScoredSentence&) const = default;
};

struct PatternLocation {
  std::size_t representative = 0;  // 1-based rank
  std::vector<std::size_t> positions;

  bool operator==(const PatternLocation&) const = default;
};

struct PatternSummary {
  std::size_t count = 0;
  std::vector<PatternLocation> locations;

  bool operator==(const PatternSummary&) const = default;
};

/// Term statistics, representative sentences and their aggregated chunk
/// patterns for a set of reports. A category centroid and the representation
/// of a single report under test share this shape.
struct Summary {
  TermTable terms;
  std::vector<ScoredSentence> representatives;
  std::map<std::string, PatternSummary> patterns;
  std::size_t report_count = 0;

  bool operator==(const Summary&) const = default;
};

struct CentroidVector {
  BiradsCategory category{0};
  Summary summary;
  std::vector<Report> members;  // kept so the centroid can be rebuilt

  bool operator==(const CentroidVector&) const = default;
};

// ln((1 + n_docs) / (1 + df)) + 1
double smoothed_idf(std::size_t df, std::size_t n_docs);

// One entry per distinct stem over the tokenized documents. Throws EmptyCorpus
// for no documents.
TermTable term_stats(const std::vector<std::vector<Sentence>>& documents, const StopWords& stopwords);

// Sum of atf * idf over non-stopword tokens, multiplied by boost_factor when
// the sentence contains a sanctioned term.
ScoredSentence score_sentence(const Sentence& sentence, const TermTable& stats, const TermDetector& detector,
                              const SummarizerConfig& config, const StopWords& stopwords);

// Top k by score, ties broken by lower ordinal.
std::vector<ScoredSentence> select_representatives(std::vector<ScoredSentence> scored, std::size_t k);

std::map<std::string, PatternSummary> aggregate_patterns(const std::vector<ScoredSentence>& representatives);

// Sanctioned terms plus terms with atf >= 0.5 plus the top tenth of non-stopword
// terms ranked by idf; stemmed.
std::vector<std::string> important_terms(const TermTable& stats, const Lexicon& lexicon);

class Summarizer {
 public:
  Summarizer(std::shared_ptr<const Resources> resources, SummarizerConfig config);

  // Findings sentences after optional term normalization.
  std::vector<Sentence> prepare(const Report& report) const;

  // Throws EmptyCorpus for an empty report list.
  Summary summarize(const std::vector<Report>& reports) const;

  // Throws EmptyCorpus, or CategoryMismatch when a report carries another label.
  CentroidVector build_centroid(BiradsCategory category, std::vector<Report> reports) const;

  // Full rebuild over members + report.
  CentroidVector add_report(const CentroidVector& centroid, Report report) const;

  const SummarizerConfig& config() const noexcept { return config_; }
  const Resources& resources() const noexcept { return *resources_; }
  const TermDetector& detector() const noexcept { return detector_; }

 private:
  std::shared_ptr<const Resources> resources_;
  SummarizerConfig config_;
  TermDetector detector_;
  Tokenizer tokenizer_;
  PosTagger tagger_;
};

}  // namespace mass

#endif  // MASS_SUMMARIZER_HPP
