#ifndef MASS_NORMALIZER_HPP
#define MASS_NORMALIZER_HPP

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mass/automaton.hpp"
#include "mass/lexicon.hpp"
#include "mass/metrics.hpp"

namespace mass {

struct Span {
  std::size_t start = 0;
  std::size_t end = 0;  // exclusive

  auto operator<=>(const Span&) const = default;
};

enum class DetectionKind { Misspelling, Unsanctioned };

struct Detection {
  Span span;
  std::string found_term;
  DetectionKind kind = DetectionKind::Unsanctioned;
  std::vector<std::string> suggestions;

  bool operator==(const Detection&) const = default;
};

// Levenshtein distance with unit costs.
std::size_t edit_distance(std::string_view a, std::string_view b);

// Vocabulary words within max_distance of `word`, ordered by distance, then
// frequency (higher first), then spelling.
std::vector<std::string> suggest_spelling(std::string_view word,
                                          const std::map<std::string, std::size_t>& vocabulary,
                                          std::size_t max_distance = 2);

/// Finds lexicon terms in free text: word-bounded, case-insensitive,
/// leftmost-longest across sanctioned and unsanctioned entries alike, so
/// "coarse heterogeneous" is not reported as "heterogeneous".
class TermDetector {
 public:
  explicit TermDetector(const Lexicon& lexicon);

  struct TermHit {
    Span span;
    const LexiconEntry* entry;
  };

  std::vector<TermHit> find_terms(std::string_view text) const;
  std::vector<Detection> detect_unsanctioned(std::string_view text) const;
  bool contains_sanctioned(std::string_view text) const;

  const Lexicon& lexicon() const noexcept { return lexicon_; }

 private:
  Lexicon lexicon_;
  PatternAutomaton automaton_;
};

std::vector<Detection> detect_unsanctioned(std::string_view text, const Lexicon& lexicon);

/// Word-level spell checker over a frequency-weighted vocabulary.
class SpellChecker {
 public:
  SpellChecker() = default;
  explicit SpellChecker(std::map<std::string, std::size_t> vocabulary, std::size_t max_distance = 2);

  bool known(std::string_view word) const;
  std::vector<std::string> suggest(std::string_view word) const;

  // One Misspelling detection per unknown alphabetic word outside `skip`.
  std::vector<Detection> detect(std::string_view text, const std::vector<Span>& skip = {}) const;

  void add(std::string_view word, std::size_t count = 1);
  const std::map<std::string, std::size_t>& vocabulary() const noexcept { return vocabulary_; }

 private:
  std::map<std::string, std::size_t> vocabulary_;
  std::size_t max_distance_ = 2;
};

struct Replacement {
  Span span;
  std::string text;
};

// Applies right to left; throws OverlappingSpans or SpanOutOfBounds.
std::string apply_replacements(std::string_view text, std::vector<Replacement> accepted);

// Accepts the first suggestion for every unsanctioned detection.
std::string normalize_terms(std::string_view text, const TermDetector& detector);

struct AnnotatedSpan {
  std::string report_id;
  std::size_t start = 0;
  std::size_t end = 0;
  std::string term;

  bool operator==(const AnnotatedSpan&) const = default;
};

// A found span is a true positive when a gold span of the same report has the
// same start and end. Rows are seeded with `terms` so unseen terms still
// appear; fn counts go to the gold term, fp counts to the found term.
DetectionEval evaluate_detection(const std::vector<AnnotatedSpan>& gold,
                                 const std::vector<AnnotatedSpan>& found,
                                 const std::vector<std::string>& terms = {});

// `report_id<TAB>start<TAB>end<TAB>term`
std::vector<AnnotatedSpan> load_gold_annotations(const std::filesystem::path& path);

}  // namespace mass

#endif  // MASS_NORMALIZER_HPP
