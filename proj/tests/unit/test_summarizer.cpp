#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "mass/error.hpp"
#include "mass/summarizer.hpp"
#include "support/test_support.hpp"

using namespace mass;
using mass::test::make_report;

namespace {

std::shared_ptr<const Resources> resources() { return mass::test::shipped_resources(); }

Summarizer summarizer(std::size_t k = 12, double boost = 2.0) {
  SummarizerConfig cfg;
  cfg.k = k;
  cfg.boost_factor = boost;
  return Summarizer(resources(), cfg);
}

std::vector<Report> mini_corpus() {
  return {make_report("r1", 3, "Mass seen. Mass stable."), make_report("r2", 3, "Calcification seen."),
          make_report("r3", 3, "Mass and calcification seen.")};
}

}  // namespace

TEST(TermStats, HandCountedMiniCorpus) {
  auto s = summarizer().summarize(mini_corpus());
  const auto& t = s.terms;
  EXPECT_EQ(t.at("mass").raw_tf, 3u);
  EXPECT_EQ(t.at("seen").raw_tf, 3u);
  EXPECT_EQ(t.at("calcification").raw_tf, 2u);
  EXPECT_EQ(t.at("mass").df, 2u);
  EXPECT_EQ(t.at("seen").df, 3u);
  EXPECT_DOUBLE_EQ(t.at("mass").atf, 1.0);
  EXPECT_DOUBLE_EQ(t.at("stable").atf, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(t.at("calcification").atf, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(t.at("seen").idf, 1.0);
  EXPECT_DOUBLE_EQ(t.at("stable").idf, std::log(4.0 / 2.0) + 1.0);
  EXPECT_TRUE(t.at("and").stopword);
  EXPECT_FALSE(t.at("mass").stopword);
}

TEST(Summarizer, MiniCorpusRepresentativesMatchHandScores) {
  auto s = summarizer(2).summarize(mini_corpus());
  const double idf_mass = std::log(4.0 / 3.0) + 1.0;
  const double idf_seen = 1.0;
  // Every sentence names "mass" or "calcification", so every score is doubled.
  const double s3 = 2.0 * (idf_mass + (2.0 / 3.0) * idf_mass + idf_seen);
  const double s0 = 2.0 * (idf_mass + idf_seen);
  ASSERT_EQ(s.representatives.size(), 2u);
  EXPECT_EQ(s.representatives[0].sentence.text, "Mass and calcification seen.");
  EXPECT_EQ(s.representatives[0].report_id, "r3");
  EXPECT_EQ(s.representatives[0].ordinal, 3u);
  EXPECT_NEAR(s.representatives[0].score, s3, 1e-12);
  EXPECT_EQ(s.representatives[1].sentence.text, "Mass seen.");
  EXPECT_NEAR(s.representatives[1].score, s0, 1e-12);
  EXPECT_TRUE(s.representatives[0].boosted);
}

TEST(Summarizer, IdfIsOneForUbiquitousTerms) { EXPECT_DOUBLE_EQ(smoothed_idf(5, 5), 1.0); }

TEST(Summarizer, MaxAtfIsOnePerCategory) {
  const auto& corpus = mass::test::bundled_corpus();
  auto sum = summarizer();
  for (auto c : BiradsCategory::all()) {
    auto s = sum.summarize(corpus.of_category(c));
    double max_atf = 0.0;
    for (const auto& [term, st] : s.terms) {
      max_atf = std::max(max_atf, st.atf);
      EXPECT_GE(st.df, 1u);
      EXPECT_GT(st.idf, 0.0);
    }
    EXPECT_EQ(max_atf, 1.0);
  }
}

TEST(ScoreSentence, BoostIsExactlyTheFactor) {
  auto res = resources();
  TermDetector detector(res->lexicon);
  Tokenizer tok(res->lexicon.multiword_terms());
  auto docs = std::vector<std::vector<Sentence>>{tok.sentences("An oval mass is seen. It is stable.")};
  auto stats = term_stats(docs, res->stopwords);
  SummarizerConfig one, two;
  one.boost_factor = 1.0;
  two.boost_factor = 2.0;
  for (const auto& s : docs[0]) {
    auto a = score_sentence(s, stats, detector, one, res->stopwords);
    auto b = score_sentence(s, stats, detector, two, res->stopwords);
    if (b.boosted) EXPECT_EQ(b.score, 2.0 * a.score);
    else EXPECT_EQ(b.score, a.score);
  }
  EXPECT_TRUE(score_sentence(docs[0][0], stats, detector, two, res->stopwords).boosted);
  EXPECT_FALSE(score_sentence(docs[0][1], stats, detector, two, res->stopwords).boosted);
}

TEST(ScoreSentence, EmptyAndStopwordOnlySentencesScoreZero) {
  auto res = resources();
  TermDetector detector(res->lexicon);
  auto docs = std::vector<std::vector<Sentence>>{Tokenizer().sentences("It is. Mass.")};
  auto stats = term_stats(docs, res->stopwords);
  EXPECT_EQ(score_sentence(Sentence{}, stats, detector, {}, res->stopwords).score, 0.0);
  EXPECT_EQ(score_sentence(docs[0][0], stats, detector, {}, res->stopwords).score, 0.0);
}

TEST(SelectRepresentatives, TopKMultisetWithOrdinalTies) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> score(0, 6);
  for (int round = 0; round < 100; ++round) {
    std::vector<ScoredSentence> all(30);
    for (std::size_t i = 0; i < all.size(); ++i) {
      all[i].ordinal = i;
      all[i].score = score(rng) / 2.0;
    }
    std::vector<ScoredSentence> shuffled = all;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    auto top = select_representatives(shuffled, 12);
    ASSERT_EQ(top.size(), 12u);

    std::vector<double> expected;
    for (const auto& s : all) expected.push_back(s.score);
    std::sort(expected.rbegin(), expected.rend());
    expected.resize(12);
    for (std::size_t i = 0; i < top.size(); ++i) {
      EXPECT_EQ(top[i].score, expected[i]);
      if (i > 0 && top[i].score == top[i - 1].score) EXPECT_LT(top[i - 1].ordinal, top[i].ordinal);
    }
    // Deterministic regardless of input order.
    EXPECT_EQ(select_representatives(all, 12), top);
  }
  std::vector<ScoredSentence> few(5);
  EXPECT_EQ(select_representatives(few, 12).size(), 5u);
}

TEST(Summarizer, PatternTableSumsRepresentatives) {
  auto s = summarizer().summarize(mass::test::bundled_corpus().of_category(BiradsCategory(4)));
  ASSERT_EQ(s.representatives.size(), 12u);
  for (const auto& [pattern, summary] : s.patterns) {
    std::size_t total = 0;
    for (const auto& rep : s.representatives)
      if (auto it = rep.syntax.patterns.find(pattern); it != rep.syntax.patterns.end()) total += it->second.count;
    EXPECT_EQ(summary.count, total) << pattern;
  }
}

TEST(Summarizer, SingleSentenceCorpus) {
  auto s = summarizer().summarize({make_report("one", 2, "Vascular calcifications are present.")});
  ASSERT_EQ(s.representatives.size(), 1u);
  double max_atf = 0.0;
  for (const auto& [t, st] : s.terms) max_atf = std::max(max_atf, st.atf);
  EXPECT_EQ(max_atf, 1.0);
}

TEST(Summarizer, NormalizesTermsBeforeCounting) {
  auto s = summarizer().summarize({make_report("n", 3, "A small nodule is seen.")});
  EXPECT_TRUE(s.terms.contains("mass"));
  EXPECT_FALSE(s.terms.contains("nodule"));
}

TEST(Centroid, AddReportEqualsRebuild) {
  auto sum = summarizer(3);
  auto base = mini_corpus();
  auto centroid = sum.build_centroid(BiradsCategory(3), base);
  auto extra = make_report("r4", 3, "Zebra quokka pattern seen.");
  auto added = sum.add_report(centroid, extra);
  base.push_back(extra);
  EXPECT_EQ(added, sum.build_centroid(BiradsCategory(3), base));
  EXPECT_EQ(added.summary.report_count, centroid.summary.report_count + 1);
  EXPECT_EQ(added.summary.terms.at("zebra").df, 1u);
  EXPECT_EQ(added.summary.terms.at("quokka").df, 1u);
}

TEST(Centroid, Errors) {
  auto sum = summarizer();
  EXPECT_THROW(sum.build_centroid(BiradsCategory(3), {}), Error);
  try {
    sum.build_centroid(BiradsCategory(2), mini_corpus());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CategoryMismatch);
  }
  auto centroid = sum.build_centroid(BiradsCategory(3), mini_corpus());
  EXPECT_THROW(sum.add_report(centroid, make_report("x", 4, "Mass.")), Error);
}

TEST(SummarizerConfig, Validation) {
  SummarizerConfig bad;
  bad.k = 0;
  EXPECT_THROW(bad.validate(), Error);
  bad.k = 1;
  bad.boost_factor = 0.5;
  EXPECT_THROW(bad.validate(), Error);
}
