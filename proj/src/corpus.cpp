#include "mass/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <random>
#include <regex>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "mass/error.hpp"
#include "mass/text.hpp"

namespace mass {
namespace {

struct HeaderHit {
  std::size_t header_begin;
  std::size_t content_begin;
  SectionKind kind;
};

SectionKind kind_from_header(std::string_view name) {
  std::string upper(name);
  for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (upper == "EXAM") return SectionKind::Exam;
  if (upper.starts_with("CLINICAL")) return SectionKind::ClinicalHistory;
  if (upper == "COMPARISON") return SectionKind::Comparison;
  if (upper == "FINDINGS") return SectionKind::Findings;
  return SectionKind::Impression;
}

bool is_upper_text(std::string_view s) {
  return std::none_of(s.begin(), s.end(),
                      [](char c) { return std::islower(static_cast<unsigned char>(c)); });
}

std::vector<HeaderHit> find_headers(const std::string& text) {
  static const std::regex kHeader(R"((exam|clinical\s+history|comparison|findings|impression)[ \t]*:)",
                                  std::regex::icase);
  std::vector<HeaderHit> hits;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), kHeader);
       it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    auto begin = static_cast<std::size_t>(m.position(0));
    std::size_t line_start = 0;
    if (begin > 0) {
      auto nl = text.rfind('\n', begin - 1);
      line_start = nl == std::string::npos ? 0 : nl + 1;
    }
    bool at_line_start = trim(std::string_view(text).substr(line_start, begin - line_start)).empty();
    bool preceded_by_space =
        begin == 0 || std::isspace(static_cast<unsigned char>(text[begin - 1]));
    if (!at_line_start && !(preceded_by_space && is_upper_text(m.str(1)))) continue;
    hits.push_back({begin, begin + static_cast<std::size_t>(m.length(0)), kind_from_header(m.str(1))});
  }
  return hits;
}

void check_stream(const std::ios& s, const std::filesystem::path& path, const char* what) {
  if (!s) throw Error(ErrorKind::Io, fmt::format("cannot {} {}", what, path.string()));
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return fields;
}

}  // namespace

BiradsCategory::BiradsCategory(int value) : value_(value) {
  if (value < 0 || value >= kCount)
    throw Error(ErrorKind::InvalidCategory, fmt::format("BI-RADS category {} outside 0..6", value));
}

std::optional<BiradsCategory> BiradsCategory::from_int(int value) noexcept {
  if (value < 0 || value >= kCount) return std::nullopt;
  return BiradsCategory(value);
}

std::vector<BiradsCategory> BiradsCategory::all() {
  std::vector<BiradsCategory> out;
  for (int c = 0; c < kCount; ++c) out.emplace_back(c);
  return out;
}

std::string_view header_name(SectionKind kind) {
  switch (kind) {
    case SectionKind::Exam: return "EXAM";
    case SectionKind::ClinicalHistory: return "CLINICAL HISTORY";
    case SectionKind::Comparison: return "COMPARISON";
    case SectionKind::Findings: return "FINDINGS";
    case SectionKind::Impression: return "IMPRESSION";
  }
  return "";
}

const std::string& Report::findings() const {
  static const std::string kEmpty;
  auto it = sections.find(SectionKind::Findings);
  return it == sections.end() ? kEmpty : it->second;
}

bool Report::has_findings() const { return !trim(findings()).empty(); }

Report parse_report(std::string_view raw, std::string id) {
  std::string text(raw);
  auto hits = find_headers(text);

  Report report;
  report.id = std::move(id);
  for (std::size_t i = 0; i < hits.size(); ++i) {
    std::size_t end = i + 1 < hits.size() ? hits[i + 1].header_begin : text.size();
    auto body = trim(std::string_view(text).substr(hits[i].content_begin, end - hits[i].content_begin));
    auto& slot = report.sections[hits[i].kind];
    if (!slot.empty() && !body.empty()) slot.push_back('\n');
    slot.append(body);
  }
  if (!report.has_findings())
    throw Error(ErrorKind::MissingFindings,
                fmt::format("report '{}' has no FINDINGS section", report.id));

  if (auto it = report.sections.find(SectionKind::Impression); it != report.sections.end())
    report.reported_category = extract_category(it->second);
  return report;
}

std::optional<BiradsCategory> extract_category(std::string_view impression) {
  static const std::regex kCategory(
      R"(bi-?\s?rads(?:[\s:,-]*(?:final\s+)?(?:assessment|category))*[\s:#-]*([0-6])(?![0-9]))",
      std::regex::icase);
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_search(impression.begin(), impression.end(), m, kCategory)) return std::nullopt;
  return BiradsCategory(m.str(1)[0] - '0');
}

std::string serialize_report(const Report& report) {
  auto sections = report.sections;
  if (report.reported_category) {
    auto& impression = sections[SectionKind::Impression];
    if (extract_category(impression) != report.reported_category) {
      if (!impression.empty()) impression += "\n";
      impression += fmt::format("BI-RADS category {}.", report.reported_category->value());
    }
  }
  std::string out;
  for (const auto& [kind, body] : sections) {
    if (!out.empty()) out += "\n";
    out += fmt::format("{}:\n{}\n", header_name(kind), body);
  }
  return out;
}

LabeledCorpus::LabeledCorpus(std::vector<Report> reports) : reports_(std::move(reports)) {
  std::set<std::string> ids;
  for (const auto& r : reports_) {
    if (!r.reported_category)
      throw Error(ErrorKind::UnlabeledReport, fmt::format("report '{}' has no category", r.id));
    if (!ids.insert(r.id).second)
      throw Error(ErrorKind::DuplicateId, fmt::format("duplicate report id '{}'", r.id));
  }
}

std::vector<Report> LabeledCorpus::of_category(BiradsCategory category) const {
  std::vector<Report> out;
  for (const auto& r : reports_)
    if (r.reported_category == category) out.push_back(r);
  return out;
}

std::map<int, std::size_t> LabeledCorpus::category_counts() const {
  std::map<int, std::size_t> counts;
  for (const auto& r : reports_) ++counts[r.reported_category->value()];
  return counts;
}

TrainTestSplit split_train_test(const LabeledCorpus& corpus, double ratio, std::uint64_t seed) {
  if (corpus.empty()) throw Error(ErrorKind::EmptyCorpus, "cannot split an empty corpus");
  if (!(ratio > 0.0 && ratio <= 1.0))
    throw Error(ErrorKind::InvalidConfig, fmt::format("split ratio {} outside (0, 1]", ratio));

  std::mt19937_64 rng(seed);
  std::vector<bool> to_train(corpus.size(), false);
  for (auto category : BiradsCategory::all()) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < corpus.size(); ++i)
      if (corpus.reports()[i].reported_category == category) members.push_back(i);
    // std::shuffle's algorithm is unspecified; spell out Fisher-Yates so a
    // seed gives the same partition on every standard library.
    for (std::size_t i = members.size(); i > 1; --i)
      std::swap(members[i - 1], members[rng() % i]);
    // The epsilon keeps products like 0.29 * 100 from flooring one short.
    auto n_train = static_cast<std::size_t>(std::floor(ratio * static_cast<double>(members.size()) + 1e-9));
    for (std::size_t k = 0; k < n_train; ++k) to_train[members[k]] = true;
  }

  std::vector<Report> train, test;
  for (std::size_t i = 0; i < corpus.size(); ++i)
    (to_train[i] ? train : test).push_back(corpus.reports()[i]);
  return {LabeledCorpus(std::move(train)), LabeledCorpus(std::move(test))};
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  check_stream(in, path, "read");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  check_stream(out, path, "write");
  out << content;
  check_stream(out, path, "write");
}

LabeledCorpus load_corpus(const std::filesystem::path& dir) {
  auto manifest_path = dir / "corpus.tsv";
  std::istringstream manifest(read_file(manifest_path));
  std::vector<Report> reports;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(manifest, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || line.front() == '#') continue;
    auto fields = split_tabs(line);
    if (fields[0] == "id") continue;
    if (fields.size() < 2)
      throw Error(ErrorKind::Io, fmt::format("{}:{}: expected id, filename, category",
                                             manifest_path.string(), line_no));
    Report report = parse_report(read_file(dir / fields[1]), fields[0]);
    if (fields.size() >= 3 && !trim(fields[2]).empty()) {
      int value = -1;
      try {
        value = std::stoi(std::string(trim(fields[2])));
      } catch (const std::exception&) {
      }
      auto category = BiradsCategory::from_int(value);
      if (!category)
        throw Error(ErrorKind::InvalidCategory,
                    fmt::format("{}:{}: bad category '{}'", manifest_path.string(), line_no, fields[2]));
      report.reported_category = category;
    }
    reports.push_back(std::move(report));
  }
  return LabeledCorpus(std::move(reports));
}

void append_to_corpus(const std::filesystem::path& dir, const Report& report) {
  if (!report.reported_category)
    throw Error(ErrorKind::UnlabeledReport, "only labeled reports can join the corpus");
  auto manifest_path = dir / "corpus.tsv";
  if (std::filesystem::exists(manifest_path)) {
    for (const auto& existing : load_corpus(dir).reports())
      if (existing.id == report.id)
        throw Error(ErrorKind::DuplicateId, fmt::format("report id '{}' already in corpus", report.id));
  }
  std::string filename = report.id + ".txt";
  write_file(dir / filename, serialize_report(report));
  std::ofstream out(manifest_path, std::ios::app);
  check_stream(out, manifest_path, "append to");
  out << report.id << '\t' << filename << '\t' << report.reported_category->value() << '\n';
}

}  // namespace mass
