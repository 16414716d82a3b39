#include "mass/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "mass/error.hpp"
#include "mass/normalizer.hpp"

namespace mass {
namespace {

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(dot / std::sqrt(na * nb), 0.0, 1.0);
}

}  // namespace

SimilarityMatrix SimilarityMatrix::transposed() const {
  SimilarityMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

double word_similarity(std::string_view a, std::string_view b, const LexicalResource& resource) {
  if (a == b) return 1.0;
  if (resource.contains(a) && resource.contains(b)) {
    auto d = resource.distance(a, b);
    return d ? 1.0 / (1.0 + static_cast<double>(*d)) : 0.0;
  }
  auto longest = std::max(a.size(), b.size());
  return 1.0 - static_cast<double>(edit_distance(a, b)) / static_cast<double>(longest);
}

std::vector<std::string> content_stems(const Sentence& sentence, const StopWords& stopwords) {
  std::vector<std::string> out;
  for (const auto& t : sentence.tokens)
    if (!stopwords.contains(t.stem)) out.push_back(t.stem);
  return out;
}

SimilarityMatrix build_matrix(const std::vector<std::string>& x, const std::vector<std::string>& y,
                              const LexicalResource& resource) {
  if (x.empty() || y.empty())
    throw Error(ErrorKind::EmptyAfterStopwords, "sentence has no content words after stopword removal");
  SimilarityMatrix r(x.size(), y.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) r.at(i, j) = word_similarity(x[i], y[j], resource);
  return r;
}

SimilarityMatrix build_matrix(const Sentence& x, const Sentence& y, const LexicalResource& resource,
                              const StopWords& stopwords) {
  return build_matrix(content_stems(x, stopwords), content_stems(y, stopwords), resource);
}

Matching max_weight_matching(const SimilarityMatrix& weights) {
  const std::size_t m = weights.rows();
  const std::size_t n = weights.cols();
  Matching result;
  if (m == 0 || n == 0) return result;

  // Minimum-cost assignment on cost = -weight, 1-based with a virtual column 0.
  const std::size_t s = std::max(m, n);
  auto cost = [&](std::size_t i, std::size_t j) {
    return (i <= m && j <= n) ? -weights.at(i - 1, j - 1) : 0.0;
  };
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(s + 1, 0.0), v(s + 1, 0.0);
  std::vector<std::size_t> row_of(s + 1, 0), way(s + 1, 0);

  for (std::size_t i = 1; i <= s; ++i) {
    row_of[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(s + 1, inf);
    std::vector<bool> used(s + 1, false);
    do {
      used[j0] = true;
      std::size_t i0 = row_of[j0], j1 = 0;
      double delta = inf;
      for (std::size_t j = 1; j <= s; ++j) {
        if (used[j]) continue;
        double cur = cost(i0, j) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= s; ++j) {
        if (used[j]) {
          u[row_of[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (row_of[j0] != 0);
    do {
      std::size_t j1 = way[j0];
      row_of[j0] = row_of[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  for (std::size_t j = 1; j <= s; ++j)
    if (row_of[j] <= m && j <= n) result.pairs.emplace_back(row_of[j] - 1, j - 1);
  std::sort(result.pairs.begin(), result.pairs.end());
  for (const auto& [i, j] : result.pairs) result.total_weight += weights.at(i, j);
  return result;
}

double sentence_similarity(std::vector<std::string> x, std::vector<std::string> y, const LexicalResource& resource) {
  if (y < x) std::swap(x, y);
  auto matching = max_weight_matching(build_matrix(x, y, resource));
  double sim = matching.total_weight / static_cast<double>(std::max(x.size(), y.size()));
  return std::clamp(sim, 0.0, 1.0);
}

double sentence_similarity(const Sentence& x, const Sentence& y, const LexicalResource& resource,
                           const StopWords& stopwords) {
  return sentence_similarity(content_stems(x, stopwords), content_stems(y, stopwords), resource);
}

void AggregationWeights::validate() const {
  bool ok = semantic >= 0.0 && pattern >= 0.0 && term >= 0.0 &&
            std::abs(semantic + pattern + term - 1.0) <= 1e-9;
  if (!ok)
    throw Error(ErrorKind::WeightsInvalid,
                fmt::format("weights ({}, {}, {}) must be non-negative and sum to 1", semantic, pattern, term));
}

double pattern_cosine(const Summary& a, const Summary& b) {
  std::map<std::string, std::pair<double, double>> joint;
  for (const auto& [p, s] : a.patterns) joint[p].first = static_cast<double>(s.count);
  for (const auto& [p, s] : b.patterns) joint[p].second = static_cast<double>(s.count);
  std::vector<double> va, vb;
  for (const auto& [p, v] : joint) {
    va.push_back(v.first);
    vb.push_back(v.second);
  }
  return cosine(va, vb);
}

double term_cosine(const Summary& a, const Summary& b) {
  std::map<std::string, std::pair<double, double>> joint;
  for (const auto& [t, s] : a.terms)
    if (!s.stopword) joint[t].first = s.atf * s.idf;
  for (const auto& [t, s] : b.terms)
    if (!s.stopword) joint[t].second = s.atf * s.idf;
  std::vector<double> va, vb;
  for (const auto& [t, v] : joint) {
    va.push_back(v.first);
    vb.push_back(v.second);
  }
  return cosine(va, vb);
}

SimilarityBreakdown report_category_similarity(const Summary& report, const Summary& centroid,
                                               const AggregationWeights& weights, const LexicalResource& resource,
                                               const StopWords& stopwords) {
  weights.validate();

  std::vector<std::vector<std::string>> targets;
  for (const auto& rep : centroid.representatives) {
    auto stems = content_stems(rep.sentence, stopwords);
    if (!stems.empty()) targets.push_back(std::move(stems));
  }

  SimilarityBreakdown b;
  double sum = 0.0;
  std::size_t counted = 0;
  if (!targets.empty()) {
    for (const auto& rep : report.representatives) {
      auto stems = content_stems(rep.sentence, stopwords);
      if (stems.empty()) continue;
      double best = 0.0;
      for (const auto& target : targets) best = std::max(best, sentence_similarity(stems, target, resource));
      sum += best;
      ++counted;
    }
  }
  b.semantic = counted ? sum / static_cast<double>(counted) : 0.0;
  b.pattern = pattern_cosine(report, centroid);
  b.term = term_cosine(report, centroid);
  b.total = std::clamp(weights.semantic * b.semantic + weights.pattern * b.pattern + weights.term * b.term, 0.0, 1.0);
  return b;
}

}  // namespace mass
