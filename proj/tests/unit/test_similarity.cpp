#include <gtest/gtest.h>

#include <cstring>
#include <random>
#include <set>

#include "mass/error.hpp"
#include "mass/similarity.hpp"
#include "mass/summarizer.hpp"
#include "support/test_support.hpp"

using namespace mass;
using mass::test::make_report;

namespace {

const LexicalResource& lexical() { return mass::test::shipped_resources()->lexical; }
const StopWords& stopwords() { return mass::test::shipped_resources()->stopwords; }

SimilarityMatrix random_matrix(std::mt19937_64& rng, std::size_t m, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  SimilarityMatrix r(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) r.at(i, j) = u(rng);
  return r;
}

std::vector<std::string> random_words(std::mt19937_64& rng) {
  static const std::vector<std::string> vocab{"mass",    "oval",  "round", "breast", "calcification", "spiculated",
                                              "quokka",  "zebra", "seen",  "stable", "margin",        "asymmetry",
                                              "biopsy",  "left",  "right", "tissue", "xylophone",     "no"};
  std::uniform_int_distribution<std::size_t> len(1, 8), pick(0, vocab.size() - 1);
  std::vector<std::string> out(len(rng));
  for (auto& w : out) w = vocab[pick(rng)];
  return out;
}

}  // namespace

TEST(WordSimilarity, Rules) {
  EXPECT_EQ(word_similarity("mass", "mass", lexical()), 1.0);
  EXPECT_EQ(word_similarity("mass", "nodule", lexical()), 1.0);
  EXPECT_DOUBLE_EQ(word_similarity("mass", "calcification", lexical()), 0.25);
  EXPECT_DOUBLE_EQ(word_similarity("abcx", "abcy", lexical()), 0.75);
  EXPECT_DOUBLE_EQ(word_similarity("mass", "masx", lexical()), 0.75);
}

TEST(BuildMatrix, HandEvaluatedTwoByThree) {
  auto r = build_matrix(std::vector<std::string>{"mass", "oval"},
                        std::vector<std::string>{"calcification", "round", "breast"}, lexical());
  ASSERT_EQ(r.rows(), 2u);
  ASSERT_EQ(r.cols(), 3u);
  const double expected[2][3] = {{1.0 / 4, 1.0 / 7, 1.0 / 8}, {1.0 / 6, 1.0 / 3, 1.0 / 8}};
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_DOUBLE_EQ(r.at(i, j), expected[i][j]) << i << "," << j;
}

TEST(BuildMatrix, StopwordsRemovedAndEmptyRejected) {
  auto x = tokenize("the mass is oval");
  Sentence sx{0, "the mass is oval", x};
  auto r = build_matrix(sx, sx, lexical(), stopwords());
  EXPECT_EQ(r.rows(), 2u);
  for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ(r.at(i, i), 1.0);
  Sentence empty{0, "it is", tokenize("it is")};
  try {
    build_matrix(empty, sx, lexical(), stopwords());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptyAfterStopwords);
  }
}

TEST(MaxWeightMatching, SmallCases) {
  SimilarityMatrix one(1, 1, 0.7);
  auto m1 = max_weight_matching(one);
  EXPECT_EQ(m1.pairs, (std::vector<std::pair<std::size_t, std::size_t>>{{0, 0}}));
  EXPECT_DOUBLE_EQ(m1.total_weight, 0.7);

  SimilarityMatrix two(2, 2);
  two.at(0, 0) = 0.9;
  two.at(0, 1) = 0.1;
  two.at(1, 0) = 0.2;
  two.at(1, 1) = 0.8;
  auto m2 = max_weight_matching(two);
  EXPECT_EQ(m2.pairs, (std::vector<std::pair<std::size_t, std::size_t>>{{0, 0}, {1, 1}}));
  EXPECT_DOUBLE_EQ(m2.total_weight, 1.7);

  EXPECT_TRUE(max_weight_matching(SimilarityMatrix(0, 3)).pairs.empty());
}

TEST(MaxWeightMatching, EqualsPermutationEnumeration) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  for (int round = 0; round < 1000; ++round) {
    auto r = random_matrix(rng, dim(rng), dim(rng));
    auto m = max_weight_matching(r);
    EXPECT_NEAR(m.total_weight, mass::test::brute_force_matching(r), 1e-9) << "round " << round;
    EXPECT_EQ(m.pairs.size(), std::min(r.rows(), r.cols()));
    std::set<std::size_t> rows, cols;
    double sum = 0.0;
    for (auto [i, j] : m.pairs) {
      EXPECT_TRUE(rows.insert(i).second);
      EXPECT_TRUE(cols.insert(j).second);
      sum += r.at(i, j);
    }
    EXPECT_DOUBLE_EQ(sum, m.total_weight);
  }
}

TEST(MaxWeightMatching, MonotoneUnderSingleEntryIncrease) {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int round = 0; round < 300; ++round) {
    auto r = random_matrix(rng, dim(rng), dim(rng));
    double before = max_weight_matching(r).total_weight;
    std::uniform_int_distribution<std::size_t> ri(0, r.rows() - 1), ci(0, r.cols() - 1);
    auto& cell = r.at(ri(rng), ci(rng));
    cell += (1.0 - cell) * u(rng);
    EXPECT_GE(max_weight_matching(r).total_weight, before - 1e-12);
  }
}

TEST(SentenceSimilarity, IdentitySymmetryRange) {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 300; ++round) {
    auto x = random_words(rng);
    auto y = random_words(rng);
    EXPECT_EQ(sentence_similarity(x, x, lexical()), 1.0);
    double xy = sentence_similarity(x, y, lexical());
    double yx = sentence_similarity(y, x, lexical());
    EXPECT_EQ(std::memcmp(&xy, &yx, sizeof xy), 0);
    EXPECT_GE(xy, 0.0);
    EXPECT_LE(xy, 1.0);
  }
}

TEST(SentenceSimilarity, GibberishIsLow) {
  std::vector<std::string> x{"qwertyuiop", "zxcvbnmlkj", "poiuytrewq"};
  std::vector<std::string> y{"calcification", "asymmetry", "spiculated", "mammography"};
  EXPECT_LT(sentence_similarity(x, y, lexical()), 0.4);
}

TEST(AggregationWeights, Validation) {
  EXPECT_NO_THROW(AggregationWeights{}.validate());
  EXPECT_THROW((AggregationWeights{0.5, 0.5, 0.5}.validate()), Error);
  EXPECT_THROW((AggregationWeights{1.2, -0.1, -0.1}.validate()), Error);
}

TEST(ReportCategorySimilarity, IdentityAndPureSemanticWeights) {
  Summarizer sum(mass::test::shipped_resources(), {});
  auto centroid = sum.summarize(mass::test::bundled_corpus().of_category(BiradsCategory(5)));
  auto b = report_category_similarity(centroid, centroid, {}, lexical(), stopwords());
  EXPECT_NEAR(b.total, 1.0, 1e-12);
  EXPECT_EQ(b.semantic, 1.0);

  auto report = sum.summarize({make_report("q", 5, "A spiculated mass is seen with skin thickening.")});
  auto sem = report_category_similarity(report, centroid, {1.0, 0.0, 0.0}, lexical(), stopwords());
  EXPECT_EQ(sem.total, sem.semantic);
  EXPECT_THROW(report_category_similarity(report, centroid, {0.9, 0.9, 0.0}, lexical(), stopwords()), Error);
}

TEST(ReportCategorySimilarity, ToyTwoCategoryFixture) {
  Summarizer sum(mass::test::shipped_resources(), {});
  auto a = sum.summarize({make_report("a1", 2, "Vascular calcifications are present."),
                          make_report("a2", 2, "Coarse popcorn-like calcifications are stable.")});
  auto b = sum.summarize({make_report("b1", 5, "A spiculated irregular mass is seen."),
                          make_report("b2", 5, "There is nipple retraction and skin thickening.")});
  auto report = sum.summarize({make_report("q", std::nullopt, "Coarse vascular calcifications are present.")});
  auto to_a = report_category_similarity(report, a, {}, lexical(), stopwords());
  auto to_b = report_category_similarity(report, b, {}, lexical(), stopwords());
  EXPECT_GT(to_a.total, to_b.total);
  for (const auto& s : {to_a, to_b}) {
    EXPECT_GE(s.total, 0.0);
    EXPECT_LE(s.total, 1.0);
  }
}
