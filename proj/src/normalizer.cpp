#include "mass/normalizer.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "mass/corpus.hpp"
#include "mass/error.hpp"
#include "mass/text.hpp"

namespace mass {

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t substitute = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, substitute});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::vector<std::string> suggest_spelling(std::string_view word,
                                          const std::map<std::string, std::size_t>& vocabulary,
                                          std::size_t max_distance) {
  struct Candidate {
    std::size_t distance;
    std::size_t frequency;
    const std::string* word;
  };
  std::vector<Candidate> candidates;
  for (const auto& [candidate, frequency] : vocabulary) {
    std::size_t gap = candidate.size() > word.size() ? candidate.size() - word.size()
                                                     : word.size() - candidate.size();
    if (gap > max_distance) continue;
    auto d = edit_distance(word, candidate);
    if (d <= max_distance) candidates.push_back({d, frequency, &candidate});
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    if (a.frequency != b.frequency) return a.frequency > b.frequency;
    return *a.word < *b.word;
  });
  std::vector<std::string> out;
  for (const auto& c : candidates) out.push_back(*c.word);
  return out;
}

TermDetector::TermDetector(const Lexicon& lexicon)
    : lexicon_(lexicon), automaton_(lexicon.terms()) {}

std::vector<TermDetector::TermHit> TermDetector::find_terms(std::string_view text) const {
  std::vector<Match> bounded;
  for (const auto& m : automaton_.scan(text))
    if (on_word_boundary(text, m)) bounded.push_back(m);
  std::vector<TermHit> hits;
  for (const auto& m : longest_nonoverlapping(bounded))
    hits.push_back({{m.start, m.end}, &lexicon_.entries()[m.pattern_id]});
  return hits;
}

std::vector<Detection> TermDetector::detect_unsanctioned(std::string_view text) const {
  std::vector<Detection> out;
  for (const auto& hit : find_terms(text)) {
    if (hit.entry->kind != TermKind::Unsanctioned) continue;
    out.push_back({hit.span, hit.entry->term, DetectionKind::Unsanctioned, hit.entry->replacements});
  }
  return out;
}

bool TermDetector::contains_sanctioned(std::string_view text) const {
  auto hits = find_terms(text);
  return std::any_of(hits.begin(), hits.end(),
                     [](const TermHit& h) { return h.entry->kind == TermKind::Sanctioned; });
}

std::vector<Detection> detect_unsanctioned(std::string_view text, const Lexicon& lexicon) {
  return TermDetector(lexicon).detect_unsanctioned(text);
}

SpellChecker::SpellChecker(std::map<std::string, std::size_t> vocabulary, std::size_t max_distance)
    : vocabulary_(std::move(vocabulary)), max_distance_(max_distance) {}

bool SpellChecker::known(std::string_view word) const {
  return vocabulary_.find(to_lower(word)) != vocabulary_.end();
}

std::vector<std::string> SpellChecker::suggest(std::string_view word) const {
  return suggest_spelling(to_lower(word), vocabulary_, max_distance_);
}

void SpellChecker::add(std::string_view word, std::size_t count) { vocabulary_[to_lower(word)] += count; }

std::vector<Detection> SpellChecker::detect(std::string_view text, const std::vector<Span>& skip) const {
  std::vector<Detection> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!std::isalpha(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && (std::isalpha(static_cast<unsigned char>(text[j])) || text[j] == '\'' ||
                               (text[j] == '-' && j + 1 < text.size() &&
                                std::isalpha(static_cast<unsigned char>(text[j + 1])))))
      ++j;
    bool touches_digit = (i > 0 && std::isdigit(static_cast<unsigned char>(text[i - 1]))) ||
                         (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])));
    Span span{i, j};
    bool skipped = std::any_of(skip.begin(), skip.end(),
                               [&](const Span& s) { return s.start < span.end && span.start < s.end; });
    auto word = text.substr(i, j - i);
    if (!touches_digit && !skipped && !known(word))
      out.push_back({span, std::string(word), DetectionKind::Misspelling, suggest(word)});
    i = j;
  }
  return out;
}

std::string apply_replacements(std::string_view text, std::vector<Replacement> accepted) {
  std::sort(accepted.begin(), accepted.end(),
            [](const Replacement& a, const Replacement& b) { return a.span < b.span; });
  for (std::size_t k = 0; k < accepted.size(); ++k) {
    const auto& s = accepted[k].span;
    if (s.start > s.end || s.end > text.size())
      throw Error(ErrorKind::SpanOutOfBounds,
                  fmt::format("span [{}, {}) outside text of length {}", s.start, s.end, text.size()));
    if (k > 0 && s.start < accepted[k - 1].span.end)
      throw Error(ErrorKind::OverlappingSpans,
                  fmt::format("span [{}, {}) overlaps [{}, {})", s.start, s.end, accepted[k - 1].span.start,
                              accepted[k - 1].span.end));
  }
  std::string out(text);
  for (auto it = accepted.rbegin(); it != accepted.rend(); ++it)
    out.replace(it->span.start, it->span.end - it->span.start, it->text);
  return out;
}

std::string normalize_terms(std::string_view text, const TermDetector& detector) {
  std::vector<Replacement> accepted;
  for (const auto& d : detector.detect_unsanctioned(text)) accepted.push_back({d.span, d.suggestions.front()});
  return apply_replacements(text, std::move(accepted));
}

DetectionEval evaluate_detection(const std::vector<AnnotatedSpan>& gold,
                                 const std::vector<AnnotatedSpan>& found,
                                 const std::vector<std::string>& terms) {
  using Key = std::tuple<std::string, std::size_t, std::size_t>;
  std::set<Key> gold_keys, found_keys;
  for (const auto& g : gold) gold_keys.insert({g.report_id, g.start, g.end});
  for (const auto& f : found) found_keys.insert({f.report_id, f.start, f.end});

  std::map<std::string, TermDetectionRow> rows;
  for (const auto& t : terms) rows[t].term = t;
  auto row = [&rows](const std::string& term) -> TermDetectionRow& {
    auto& r = rows[term];
    r.term = term;
    return r;
  };

  DetectionEval eval;
  for (const auto& g : gold) {
    auto& r = row(g.term);
    ++r.occurrences;
    if (found_keys.count({g.report_id, g.start, g.end})) {
      ++r.tp;
      ++eval.counts.tp;
    } else {
      ++r.fn;
      ++eval.counts.fn;
    }
  }
  for (const auto& f : found) {
    if (gold_keys.count({f.report_id, f.start, f.end})) continue;
    ++row(f.term).fp;
    ++eval.counts.fp;
  }
  eval.pr = precision_recall(eval.counts);

  // Seeded terms keep the caller's order; anything else follows alphabetically.
  for (const auto& t : terms) eval.per_term.push_back(rows.at(t));
  for (const auto& [term, r] : rows)
    if (std::find(terms.begin(), terms.end(), term) == terms.end()) eval.per_term.push_back(r);
  return eval;
}

std::vector<AnnotatedSpan> load_gold_annotations(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  std::vector<AnnotatedSpan> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || line.front() == '#') continue;
    std::istringstream fields(line);
    AnnotatedSpan span;
    std::string start, end;
    if (!std::getline(fields, span.report_id, '\t') || !std::getline(fields, start, '\t') ||
        !std::getline(fields, end, '\t') || !std::getline(fields, span.term))
      throw Error(ErrorKind::Io, fmt::format("{}:{}: expected 4 tab-separated fields", path.string(), line_no));
    if (span.report_id == "report_id") continue;
    try {
      span.start = std::stoul(start);
      span.end = std::stoul(end);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Io, fmt::format("{}:{}: bad offsets", path.string(), line_no));
    }
    out.push_back(std::move(span));
  }
  return out;
}

}  // namespace mass
