#include <gtest/gtest.h>

#include <random>

#include "mass/error.hpp"
#include "mass/evaluation.hpp"
#include "mass/normalizer.hpp"
#include "support/test_support.hpp"

using namespace mass;

namespace {

const Lexicon& lexicon() { return mass::test::shipped_resources()->lexicon; }

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::Io;
}

}  // namespace

TEST(EditDistance, KnownValues) {
  EXPECT_EQ(edit_distance("kitten", "sitting"), 3u);
  EXPECT_EQ(edit_distance("mass", "mass"), 0u);
  EXPECT_EQ(edit_distance("", "mass"), 4u);
  EXPECT_EQ(edit_distance("assymetry", "asymmetry"), 2u);
}

TEST(EditDistance, AgreesWithRecursiveOracleAndIsAMetric) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> len(0, 7), ch(0, 2);
  auto word = [&] {
    std::string s(static_cast<std::size_t>(len(rng)), 'a');
    for (auto& c : s) c = static_cast<char>('a' + ch(rng));
    return s;
  };
  for (int i = 0; i < 300; ++i) {
    auto a = word(), b = word(), c = word();
    EXPECT_EQ(edit_distance(a, b), mass::test::naive_edit_distance(a, b));
    EXPECT_EQ(edit_distance(a, b), edit_distance(b, a));
    EXPECT_LE(edit_distance(a, c), edit_distance(a, b) + edit_distance(b, c));
  }
}

TEST(SuggestSpelling, RankedByDistanceFrequencyThenSpelling) {
  std::map<std::string, std::size_t> vocab{{"asymmetry", 10}, {"mass", 50}, {"masses", 5}, {"moss", 50}, {"miss", 3}};
  EXPECT_EQ(suggest_spelling("assymetry", vocab), std::vector<std::string>{"asymmetry"});
  EXPECT_EQ(suggest_spelling("mas", vocab), (std::vector<std::string>{"mass", "moss", "miss"}));
  EXPECT_TRUE(suggest_spelling("qqqq", vocab).empty());
}

TEST(SpellChecker, SkipsKnownWordsNumbersAndGivenSpans) {
  SpellChecker speller({{"a", 5}, {"mass", 9}, {"seen", 4}});
  auto d = speller.detect("A mas seen at 3 cm", {});
  ASSERT_EQ(d.size(), 3u);  // mas, at, cm
  EXPECT_EQ(d[0].found_term, "mas");
  EXPECT_EQ(d[0].kind, DetectionKind::Misspelling);
  EXPECT_EQ(d[0].suggestions.front(), "mass");
  EXPECT_EQ(speller.detect("A mas seen", {{2, 5}}).size(), 0u);
}

TEST(DetectUnsanctioned, NoduleSuggestsMass) {
  auto d = detect_unsanctioned("A nodule in the upper quadrant", lexicon());
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].found_term, "nodule");
  EXPECT_EQ(d[0].span, (Span{2, 8}));
  EXPECT_EQ(d[0].suggestions, std::vector<std::string>{"mass"});
  EXPECT_EQ(d[0].kind, DetectionKind::Unsanctioned);
}

TEST(DetectUnsanctioned, LongestMatchAndBoundaries) {
  auto d = detect_unsanctioned("Heterogeneous calcifications", lexicon());
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].found_term, "heterogeneous");
  // Sanctioned "coarse heterogeneous" swallows the unsanctioned head.
  EXPECT_TRUE(detect_unsanctioned("coarse heterogeneous calcifications", lexicon()).empty());
  EXPECT_TRUE(detect_unsanctioned("scattered areas of fibroglandular density", lexicon()).empty());
  EXPECT_TRUE(detect_unsanctioned("nodules and nodular change", lexicon()).empty());
  auto vague = detect_unsanctioned("a vague density", lexicon());
  ASSERT_EQ(vague.size(), 1u);
  EXPECT_EQ(vague[0].found_term, "vague density");
  EXPECT_TRUE(detect_unsanctioned("An oval mass with spiculated margins.", lexicon()).empty());
}

TEST(ApplyReplacements, SubstitutesRightToLeft) {
  EXPECT_EQ(apply_replacements("a nodule seen", {{{2, 8}, "mass"}}), "a mass seen");
  EXPECT_EQ(apply_replacements("a nodule seen", {}), "a nodule seen");
  EXPECT_EQ(apply_replacements("ovoid nodule", {{{6, 12}, "mass"}, {{0, 5}, "oval"}}), "oval mass");
  EXPECT_EQ(kind_of([] { apply_replacements("abcdef", {{{0, 3}, "x"}, {{2, 4}, "y"}}); }), ErrorKind::OverlappingSpans);
  EXPECT_EQ(kind_of([] { apply_replacements("abc", {{{1, 9}, "x"}}); }), ErrorKind::SpanOutOfBounds);
}

TEST(ApplyReplacements, FullAcceptanceLeavesNoDetectionAtReplacedSpans) {
  std::string text = "A Nodule with lobulated contour and a stellate, heterogeneous density. Ovoid nodule.";
  TermDetector detector(lexicon());
  auto normalized = normalize_terms(text, detector);
  EXPECT_TRUE(detector.detect_unsanctioned(normalized).empty()) << normalized;
  EXPECT_EQ(normalized,
            "A mass with lobular contour and a spiculated, heterogeneously dense asymmetry. oval mass.");
}

TEST(DetectUnsanctioned, SpansNeverSplitWords) {
  std::mt19937_64 rng(5);
  const std::vector<std::string> words{"nodule", "nodules", "density", "xdensity", "ovoid", "ovoids", "the",
                                       "tubular", "tubularity", "-", "ductal", "2", "stellate."};
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
  for (int round = 0; round < 200; ++round) {
    std::string text;
    for (int i = 0; i < 12; ++i) text += words[pick(rng)] + (i % 3 ? " " : "");
    for (const auto& d : detect_unsanctioned(text, lexicon())) {
      if (d.span.start > 0) EXPECT_FALSE(std::isalnum(static_cast<unsigned char>(text[d.span.start - 1]))) << text;
      if (d.span.end < text.size()) EXPECT_FALSE(std::isalnum(static_cast<unsigned char>(text[d.span.end]))) << text;
    }
  }
}

TEST(EvaluateDetection, CountsAndUndefinedPrecision) {
  std::vector<AnnotatedSpan> gold{{"r1", 0, 5, "ovoid"}, {"r1", 10, 16, "nodule"}, {"r2", 3, 9, "nodule"}};
  auto same = evaluate_detection(gold, gold, {"nodule", "ovoid"});
  EXPECT_EQ(same.counts, (ConfusionCounts{3, 0, 0}));
  EXPECT_DOUBLE_EQ(*same.pr.precision, 1.0);
  EXPECT_DOUBLE_EQ(*same.pr.recall, 1.0);

  auto none = evaluate_detection(gold, {}, {"nodule", "ovoid"});
  EXPECT_EQ(none.counts, (ConfusionCounts{0, 0, 3}));
  EXPECT_FALSE(none.pr.precision);
  EXPECT_DOUBLE_EQ(*none.pr.recall, 0.0);

  auto shifted = evaluate_detection(gold, {{"r1", 0, 5, "ovoid"}, {"r2", 4, 9, "nodule"}}, {"nodule", "ovoid"});
  EXPECT_EQ(shifted.counts, (ConfusionCounts{1, 1, 2}));
  ASSERT_EQ(shifted.per_term.size(), 2u);
  EXPECT_EQ(shifted.per_term[0].term, "nodule");
  EXPECT_EQ(shifted.per_term[0].occurrences, 2u);
  EXPECT_EQ(shifted.per_term[0].fp, 1u);
}

TEST(EvaluateDetection, BundledAnnotatedFixture) {
  auto eval = evaluate_normalizer_dir(mass::test::kDataDir / "fixtures" / "normalizer", lexicon());
  EXPECT_EQ(eval.counts, (ConfusionCounts{206, 0, 9}));
  EXPECT_EQ(truncate_fraction(206, 215, 3), "0.958");
  EXPECT_EQ(eval.per_term.size(), 17u);
  for (const auto& row : eval.per_term) EXPECT_EQ(row.occurrences, row.tp + row.fn) << row.term;
}
