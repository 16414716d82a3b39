#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "mass/classifier.hpp"
#include "mass/error.hpp"
#include "support/test_support.hpp"

using namespace mass;
using mass::test::make_report;

namespace {

std::map<BiradsCategory, double> scores_of(std::initializer_list<std::pair<int, double>> values) {
  std::map<BiradsCategory, double> out;
  for (auto [c, v] : values) out.emplace(BiradsCategory(c), v);
  return out;
}

std::map<BiradsCategory, double> argmax_fixture_scores() {
  return scores_of({{0, 0.21}, {1, 0.50}, {2, 0.4583}, {3, 0.30}, {4, 0.434}, {5, 0.12}, {6, 0.05}});
}

const std::vector<std::string>& category_texts() {
  static const std::vector<std::string> texts{
      "Additional imaging evaluation is needed.",
      "No mass or suspicious calcification is seen.",
      "Scattered vascular calcifications are benign.",
      "A circumscribed oval mass is probably benign.",
      "A new asymmetry with indistinct margin is seen.",
      "An irregular spiculated mass with skin thickening.",
      "The known biopsy proven malignancy is unchanged.",
  };
  return texts;
}

LabeledCorpus small_corpus(std::size_t per_category) {
  std::vector<Report> reports;
  for (int c = 0; c < 7; ++c)
    for (std::size_t i = 0; i < per_category; ++i)
      reports.push_back(make_report("c" + std::to_string(c) + "-" + std::to_string(i), c, category_texts()[c]));
  return LabeledCorpus(reports);
}

}  // namespace

TEST(Train, SevenCentroidsOrderedByCategory) {
  auto resources = mass::test::shipped_resources();
  auto model = train(small_corpus(3), resources);
  ASSERT_EQ(model.centroids.size(), 7u);
  for (int c = 0; c < 7; ++c) {
    EXPECT_EQ(model.centroids[c].category.value(), c);
    EXPECT_EQ(model.centroids[c].summary.report_count, 3u);
    EXPECT_EQ(model.centroids[c].members.size(), 3u);
  }
  EXPECT_EQ(model.resource_digest, resources->digest());
  EXPECT_EQ(model.format_version, kModelFormatVersion);
  EXPECT_EQ(model, train_serial(small_corpus(3), resources));
}

TEST(Train, MissingCategoryIsReported) {
  std::vector<Report> reports;
  auto corpus = small_corpus(2);
  for (const auto& r : corpus.reports())
    if (r.reported_category->value() != 5) reports.push_back(r);
  try {
    train(LabeledCorpus(reports), mass::test::shipped_resources());
    FAIL();
  } catch (const MissingCategoryError& e) {
    EXPECT_EQ(e.missing(), std::vector<int>{5});
  }
}

TEST(Train, InvalidConfigRejected) {
  ModelConfig config;
  config.weights = {0.7, 0.7, 0.0};
  EXPECT_THROW(train(small_corpus(1), mass::test::shipped_resources(), config), Error);
  config = {};
  config.summarizer.k = 0;
  EXPECT_THROW(train(small_corpus(1), mass::test::shipped_resources(), config), Error);
}

TEST(Scorecard, AllEqualScoresPickHighestCategory) {
  auto card = Scorecard::from_scores(scores_of({{0, 0.4}, {1, 0.4}, {2, 0.4}, {3, 0.4}, {4, 0.4}, {5, 0.4}, {6, 0.4}}));
  EXPECT_EQ(card.inferred.value(), 6);
  ASSERT_EQ(card.ties.size(), 7u);
  EXPECT_EQ(card.ties.front().value(), 6);
  EXPECT_EQ(card.ties.back().value(), 0);
}

TEST(Scorecard, ArgmaxFixture) {
  auto card = Scorecard::from_scores(argmax_fixture_scores());
  EXPECT_EQ(card.inferred.value(), 1);
  EXPECT_EQ(card.ties, std::vector<BiradsCategory>{BiradsCategory(1)});
  EXPECT_EQ(card.percent(BiradsCategory(4)), "43.40");
  EXPECT_EQ(card.percent(BiradsCategory(1)), "50.00");
  EXPECT_EQ(card.percent(BiradsCategory(2)), "45.83");

  auto verdict = ConsistencyVerdict::from(card, BiradsCategory(4));
  EXPECT_EQ(verdict.status, VerdictStatus::Inconsistent);
  EXPECT_EQ(verdict.reported, BiradsCategory(4));
  EXPECT_EQ(verdict.scorecard.scores.size(), 7u);
  EXPECT_EQ(to_string(verdict.status), "inconsistent");
}

TEST(Scorecard, NeedsAllSevenCategories) {
  EXPECT_THROW(Scorecard::from_scores(scores_of({{1, 0.5}, {2, 0.4}})), Error);
}

TEST(Scorecard, ArgmaxInvariantUnderInsertionOrder) {
  std::vector<std::pair<int, double>> entries{{0, 0.21}, {1, 0.50}, {2, 0.4583}, {3, 0.30},
                                              {4, 0.434}, {5, 0.12}, {6, 0.05}};
  std::mt19937 rng(9);
  for (int round = 0; round < 20; ++round) {
    std::shuffle(entries.begin(), entries.end(), rng);
    std::map<BiradsCategory, double> scores;
    for (auto [c, v] : entries) scores.emplace(BiradsCategory(c), v);
    EXPECT_EQ(Scorecard::from_scores(scores).inferred.value(), 1);
  }
}

TEST(Verdict, Statuses) {
  auto card = Scorecard::from_scores(argmax_fixture_scores());
  EXPECT_EQ(ConsistencyVerdict::from(card, BiradsCategory(1)).status, VerdictStatus::Consistent);
  EXPECT_EQ(ConsistencyVerdict::from(card, std::nullopt).status, VerdictStatus::Unlabeled);
  EXPECT_EQ(to_string(VerdictStatus::Consistent), "consistent");
  EXPECT_EQ(to_string(VerdictStatus::Unlabeled), "unlabeled");
}

TEST(Classifier, VerbatimCentroidReportWins) {
  auto resources = mass::test::shipped_resources();
  Classifier clf(resources, train(small_corpus(1), resources));
  for (int c = 0; c < 7; ++c) {
    auto card = clf.classify(make_report("q", std::nullopt, category_texts()[c]));
    EXPECT_EQ(card.inferred.value(), c);
    EXPECT_NEAR(card.scores.at(BiradsCategory(c)), 1.0, 1e-12);
    for (const auto& [cat, s] : card.scores) {
      EXPECT_GE(s, 0.0);
      EXPECT_LE(s, 1.0);
    }
  }
}

TEST(Classifier, RejectsForeignDigestAndMissingFindings) {
  auto resources = mass::test::shipped_resources();
  auto model = train(small_corpus(1), resources);
  Classifier clf(resources, model);
  Report empty{"e", {{SectionKind::Impression, "BI-RADS 1."}}, BiradsCategory(1)};
  try {
    clf.classify(empty);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MissingFindings);
  }
  model.resource_digest = std::string(64, '0');
  try {
    Classifier bad(resources, model);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CorruptModel);
  }
}

TEST(Classifier, WithReportRebuildsOnlyThatCentroid) {
  auto resources = mass::test::shipped_resources();
  auto model = train(small_corpus(2), resources);
  Classifier clf(resources, model);
  auto next = clf.with_report(make_report("new-4", 4, "A new focal asymmetry with architectural distortion."));
  for (int c = 0; c < 7; ++c) {
    if (c == 4) continue;
    EXPECT_EQ(next.centroids[c], model.centroids[c]);
  }
  EXPECT_EQ(next.centroids[4].members.size(), 3u);
  Summarizer sum(resources, model.config.summarizer);
  auto members = model.centroids[4].members;
  members.push_back(make_report("new-4", 4, "A new focal asymmetry with architectural distortion."));
  EXPECT_EQ(next.centroids[4].summary, sum.summarize(members));

  try {
    clf.with_report(make_report("c4-0", 4, "Duplicate id."));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DuplicateId);
  }
  try {
    clf.with_report(make_report("u", std::nullopt, "No label."));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnlabeledReport);
  }
}

TEST(Classifier, BundledFixturesClassify) {
  auto resources = mass::test::shipped_resources();
  Classifier clf(resources, train(mass::test::bundled_corpus(), resources));
  auto consistent = parse_report(read_file(mass::test::kDataDir / "fixtures/reports/consistent_1.txt"), "c");
  auto inconsistent = parse_report(read_file(mass::test::kDataDir / "fixtures/reports/inconsistent_4.txt"), "i");
  auto unlabeled = parse_report(read_file(mass::test::kDataDir / "fixtures/reports/unlabeled.txt"), "u");
  EXPECT_EQ(clf.check_consistency(consistent).status, VerdictStatus::Consistent);
  auto v = clf.check_consistency(inconsistent);
  EXPECT_EQ(v.status, VerdictStatus::Inconsistent);
  EXPECT_EQ(v.reported, BiradsCategory(4));
  EXPECT_EQ(clf.check_consistency(unlabeled).status, VerdictStatus::Unlabeled);
}
