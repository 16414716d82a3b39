#include "mass/summarizer.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

#include "mass/error.hpp"

namespace mass {

void SummarizerConfig::validate() const {
  if (k < 1) throw Error(ErrorKind::InvalidConfig, "representative count k must be at least 1");
  if (!(boost_factor >= 1.0)) throw Error(ErrorKind::InvalidConfig, "boost factor must be at least 1");
}

double smoothed_idf(std::size_t df, std::size_t n_docs) {
  return std::log((1.0 + static_cast<double>(n_docs)) / (1.0 + static_cast<double>(df))) + 1.0;
}

TermTable term_stats(const std::vector<std::vector<Sentence>>& documents, const StopWords& stopwords) {
  if (documents.empty()) throw Error(ErrorKind::EmptyCorpus, "no documents to count");

  TermTable table;
  for (const auto& doc : documents) {
    std::set<std::string> seen;
    for (const auto& sentence : doc) {
      for (const auto& token : sentence.tokens) {
        auto& entry = table[token.stem];
        ++entry.raw_tf;
        if (seen.insert(token.stem).second) ++entry.df;
      }
    }
  }

  std::size_t max_tf = 0;
  for (const auto& [term, s] : table) max_tf = std::max(max_tf, s.raw_tf);
  for (auto& [term, s] : table) {
    s.term = term;
    s.atf = static_cast<double>(s.raw_tf) / static_cast<double>(max_tf);
    s.idf = smoothed_idf(s.df, documents.size());
    s.stopword = stopwords.contains(term);
  }
  return table;
}

ScoredSentence score_sentence(const Sentence& sentence, const TermTable& stats, const TermDetector& detector,
                              const SummarizerConfig& config, const StopWords& stopwords) {
  ScoredSentence scored;
  scored.sentence = sentence;
  double base = 0.0;
  std::set<std::string> snapshot_seen;
  for (const auto& token : sentence.tokens) {
    if (stopwords.contains(token.stem)) continue;
    auto it = stats.find(token.stem);
    double atf = it == stats.end() ? 0.0 : it->second.atf;
    double idf = it == stats.end() ? 0.0 : it->second.idf;
    base += atf * idf;
    if (snapshot_seen.insert(token.stem).second) scored.terms.push_back({token.stem, atf, idf});
  }
  scored.boosted = detector.contains_sanctioned(sentence.text);
  scored.score = scored.boosted ? base * config.boost_factor : base;
  return scored;
}

std::vector<ScoredSentence> select_representatives(std::vector<ScoredSentence> scored, std::size_t k) {
  std::sort(scored.begin(), scored.end(), [](const ScoredSentence& a, const ScoredSentence& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.ordinal < b.ordinal;
  });
  if (scored.size() > k) scored.resize(k);
  return scored;
}

std::map<std::string, PatternSummary> aggregate_patterns(const std::vector<ScoredSentence>& representatives) {
  std::map<std::string, PatternSummary> table;
  for (std::size_t r = 0; r < representatives.size(); ++r) {
    for (const auto& [pattern, occurrence] : representatives[r].syntax.patterns) {
      auto& entry = table[pattern];
      entry.count += occurrence.count;
      entry.locations.push_back({r + 1, occurrence.positions});
    }
  }
  return table;
}

std::vector<std::string> important_terms(const TermTable& stats, const Lexicon& lexicon) {
  std::set<std::string> chosen;
  for (const auto& term : lexicon.terms(TermKind::Sanctioned)) chosen.insert(stem_phrase(term));

  std::vector<const TermStats*> content;
  for (const auto& [term, s] : stats) {
    if (s.stopword) continue;
    content.push_back(&s);
    if (s.atf >= 0.5) chosen.insert(term);
  }
  std::sort(content.begin(), content.end(), [](const TermStats* a, const TermStats* b) {
    if (a->idf != b->idf) return a->idf > b->idf;
    return a->term < b->term;
  });
  std::size_t decile = (content.size() + 9) / 10;
  for (std::size_t i = 0; i < decile; ++i) chosen.insert(content[i]->term);
  return {chosen.begin(), chosen.end()};
}

Summarizer::Summarizer(std::shared_ptr<const Resources> resources, SummarizerConfig config)
    : resources_(std::move(resources)),
      config_(std::move(config)),
      detector_(resources_->lexicon),
      tokenizer_(resources_->lexicon.multiword_terms()),
      tagger_(resources_->tags) {
  config_.validate();
}

std::vector<Sentence> Summarizer::prepare(const Report& report) const {
  const auto& findings = report.findings();
  if (!config_.normalize_terms) return tokenizer_.sentences(findings);
  return tokenizer_.sentences(normalize_terms(findings, detector_));
}

Summary Summarizer::summarize(const std::vector<Report>& reports) const {
  if (reports.empty()) throw Error(ErrorKind::EmptyCorpus, "cannot summarize zero reports");

  std::vector<std::vector<Sentence>> documents;
  documents.reserve(reports.size());
  for (const auto& r : reports) documents.push_back(prepare(r));

  Summary summary;
  summary.report_count = reports.size();
  summary.terms = term_stats(documents, resources_->stopwords);

  std::vector<ScoredSentence> scored;
  std::size_t ordinal = 0;
  for (std::size_t d = 0; d < documents.size(); ++d) {
    for (const auto& sentence : documents[d]) {
      auto s = score_sentence(sentence, summary.terms, detector_, config_, resources_->stopwords);
      s.report_id = reports[d].id;
      s.ordinal = ordinal++;
      scored.push_back(std::move(s));
    }
  }
  summary.representatives = select_representatives(std::move(scored), config_.k);

  auto important = important_terms(summary.terms, resources_->lexicon);
  for (auto& rep : summary.representatives)
    rep.syntax = analyze_sentence(rep.sentence.text, tagger_, important);
  summary.patterns = aggregate_patterns(summary.representatives);
  return summary;
}

CentroidVector Summarizer::build_centroid(BiradsCategory category, std::vector<Report> reports) const {
  for (const auto& r : reports)
    if (r.reported_category != category)
      throw Error(ErrorKind::CategoryMismatch,
                  fmt::format("report '{}' does not belong to category {}", r.id, category.value()));
  CentroidVector centroid{category, summarize(reports), std::move(reports)};
  return centroid;
}

CentroidVector Summarizer::add_report(const CentroidVector& centroid, Report report) const {
  if (report.reported_category != centroid.category)
    throw Error(ErrorKind::CategoryMismatch,
                fmt::format("report '{}' cannot join category {}", report.id, centroid.category.value()));
  auto members = centroid.members;
  members.push_back(std::move(report));
  return build_centroid(centroid.category, std::move(members));
}

}  // namespace mass
