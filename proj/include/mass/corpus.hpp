#ifndef MASS_CORPUS_HPP
#define MASS_CORPUS_HPP

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mass {

/// BI-RADS final assessment category, 0 through 6.
class BiradsCategory {
 public:
  static constexpr int kCount = 7;

  explicit BiradsCategory(int value);

  static std::optional<BiradsCategory> from_int(int value) noexcept;
  static std::vector<BiradsCategory> all();

  int value() const noexcept { return value_; }
  std::size_t index() const noexcept { return static_cast<std::size_t>(value_); }

  auto operator<=>(const BiradsCategory&) const = default;

 private:
  int value_;
};

enum class SectionKind { Exam, ClinicalHistory, Comparison, Findings, Impression };

std::string_view header_name(SectionKind kind);

struct Report {
  std::string id;
  std::map<SectionKind, std::string> sections;
  std::optional<BiradsCategory> reported_category;

  // Empty when the report has no findings section.
  const std::string& findings() const;
  bool has_findings() const;

  bool operator==(const Report&) const = default;
};

// Recognizes "FINDINGS:", "IMPRESSION:", "CLINICAL HISTORY:", "COMPARISON:"
// and "EXAM:" at the start of a line (any case), or anywhere in a line when
// written in capitals. Throws MissingFindings when no findings text is found.
Report parse_report(std::string_view raw, std::string id = {});

// First "BI-RADS [category|assessment] N" in the text, N in 0..6.
std::optional<BiradsCategory> extract_category(std::string_view impression);

// Inverse of parse_report for reports whose category is stated in (or absent
// from) the impression. A category that the impression does not state is
// appended to it as "BI-RADS category N.".
std::string serialize_report(const Report& report);

/// Reports that all carry a category, with unique ids.
class LabeledCorpus {
 public:
  LabeledCorpus() = default;
  explicit LabeledCorpus(std::vector<Report> reports);

  const std::vector<Report>& reports() const noexcept { return reports_; }
  std::size_t size() const noexcept { return reports_.size(); }
  bool empty() const noexcept { return reports_.empty(); }

  std::vector<Report> of_category(BiradsCategory category) const;
  std::map<int, std::size_t> category_counts() const;

 private:
  std::vector<Report> reports_;
};

struct TrainTestSplit {
  LabeledCorpus train;
  LabeledCorpus test;
};

// Stratified split: floor(ratio * n_c) reports of each category go to train.
// Each category is shuffled with a seeded Fisher-Yates pass first.
TrainTestSplit split_train_test(const LabeledCorpus& corpus, double ratio, std::uint64_t seed);

// Reads `corpus.tsv` (id, filename, category) from dir and parses every listed
// report. The manifest category overrides anything parsed from the impression.
LabeledCorpus load_corpus(const std::filesystem::path& dir);

// Writes the report as `<id>.txt` and appends it to the manifest.
void append_to_corpus(const std::filesystem::path& dir, const Report& report);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace mass

#endif  // MASS_CORPUS_HPP
