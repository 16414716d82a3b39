#include "mass/lexicon.hpp"

#include <algorithm>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "mass/corpus.hpp"
#include "mass/error.hpp"
#include "mass/text.hpp"

namespace mass {
namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string normalize_term(std::string_view term) {
  // Collapse internal whitespace so "focal  asymmetry" and "focal asymmetry"
  // are the same entry.
  std::string out;
  bool space = false;
  for (char c : trim(term)) {
    if (c == ' ' || c == '\t') {
      space = true;
      continue;
    }
    if (space && !out.empty()) out.push_back(' ');
    space = false;
    out.push_back(c);
  }
  return to_lower(out);
}

template <typename Fn>
void for_each_data_line(std::string_view text, Fn&& fn) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    fn(line, line_no);
  }
}

}  // namespace

Lexicon::Lexicon(std::vector<LexiconEntry> entries, std::string version)
    : entries_(std::move(entries)), version_(std::move(version)) {
  for (auto& e : entries_) {
    e.term = normalize_term(e.term);
    for (auto& r : e.replacements) r = normalize_term(r);
    std::erase_if(e.replacements, [](const std::string& r) { return r.empty(); });
    if (e.term.empty()) throw Error(ErrorKind::InvalidEntry, "empty lexicon term");
  }
  std::sort(entries_.begin(), entries_.end(),
            [](const auto& a, const auto& b) { return a.term < b.term; });
  for (std::size_t i = 1; i < entries_.size(); ++i)
    if (entries_[i].term == entries_[i - 1].term)
      throw Error(ErrorKind::DuplicateTerm, fmt::format("term '{}' listed twice", entries_[i].term));

  for (const auto& e : entries_) {
    if (e.kind == TermKind::Sanctioned) {
      if (!e.replacements.empty())
        throw Error(ErrorKind::InvalidEntry,
                    fmt::format("sanctioned term '{}' must not carry replacements", e.term));
      continue;
    }
    if (e.replacements.empty())
      throw Error(ErrorKind::MissingReplacement,
                  fmt::format("unsanctioned term '{}' has no replacement", e.term));
    for (const auto& r : e.replacements) {
      const auto* target = lookup(r);
      if (!target || target->kind != TermKind::Sanctioned)
        throw Error(ErrorKind::DanglingReplacement,
                    fmt::format("'{}' maps to '{}', which is not a sanctioned term", e.term, r));
    }
  }
}

const LexiconEntry* Lexicon::lookup(std::string_view term) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), term,
                             [](const LexiconEntry& e, std::string_view t) { return e.term < t; });
  return it != entries_.end() && it->term == term ? &*it : nullptr;
}

std::vector<std::string> Lexicon::terms() const {
  std::vector<std::string> out;
  for (const auto& e : entries_) out.push_back(e.term);
  return out;
}

std::vector<std::string> Lexicon::terms(TermKind kind) const {
  std::vector<std::string> out;
  for (const auto& e : entries_)
    if (e.kind == kind) out.push_back(e.term);
  return out;
}

std::vector<std::string> Lexicon::multiword_terms() const {
  std::vector<std::string> out;
  for (const auto& e : entries_)
    if (e.term.find(' ') != std::string::npos) out.push_back(e.term);
  return out;
}

Lexicon parse_lexicon(std::string_view text) {
  std::vector<LexiconEntry> entries;
  std::string version = "unversioned";
  for_each_data_line(text, [&](const std::string& line, std::size_t line_no) {
    auto t = trim(line);
    if (t.empty()) return;
    if (t.front() == '#') {
      t.remove_prefix(1);
      t = trim(t);
      if (t.starts_with("version:")) version = std::string(trim(t.substr(8)));
      return;
    }
    auto fields = split(line, '\t');
    if (fields.size() < 2)
      throw Error(ErrorKind::InvalidEntry, fmt::format("lexicon line {}: expected term and kind", line_no));
    LexiconEntry entry;
    entry.term = fields[0];
    auto kind = to_lower(trim(fields[1]));
    if (kind == "sanctioned")
      entry.kind = TermKind::Sanctioned;
    else if (kind == "unsanctioned")
      entry.kind = TermKind::Unsanctioned;
    else
      throw Error(ErrorKind::InvalidEntry, fmt::format("lexicon line {}: unknown kind '{}'", line_no, kind));
    if (fields.size() >= 3 && !trim(fields[2]).empty()) entry.replacements = split(fields[2], '|');
    entries.push_back(std::move(entry));
  });
  return Lexicon(std::move(entries), std::move(version));
}

Lexicon load_lexicon(const std::filesystem::path& path) { return parse_lexicon(read_file(path)); }

std::string serialize_lexicon(const Lexicon& lexicon) {
  std::string out = fmt::format("# version: {}\n", lexicon.version());
  for (const auto& e : lexicon.entries())
    out += fmt::format("{}\t{}\t{}\n", e.term,
                       e.kind == TermKind::Sanctioned ? "sanctioned" : "unsanctioned",
                       fmt::join(e.replacements, "|"));
  return out;
}

LexicalResource::LexicalResource(const std::vector<RawSynset>& raw) {
  std::map<std::string, std::size_t> index;
  for (const auto& s : raw) {
    if (!index.emplace(s.id, synsets_.size()).second)
      throw Error(ErrorKind::InvalidEntry, fmt::format("synset '{}' defined twice", s.id));
    Synset synset;
    synset.id = s.id;
    for (const auto& m : s.members) {
      auto stemmed = stem_phrase(m);
      if (!stemmed.empty()) synset.members.push_back(std::move(stemmed));
    }
    synsets_.push_back(std::move(synset));
  }
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i].parent_id.empty()) continue;
    auto it = index.find(raw[i].parent_id);
    if (it == index.end())
      throw Error(ErrorKind::InvalidEntry,
                  fmt::format("synset '{}' has unknown parent '{}'", raw[i].id, raw[i].parent_id));
    synsets_[i].parent = it->second;
  }

  ancestors_.resize(synsets_.size());
  for (std::size_t i = 0; i < synsets_.size(); ++i) {
    std::optional<std::size_t> node = i;
    while (node) {
      if (ancestors_[i].size() > synsets_.size())
        throw Error(ErrorKind::InvalidEntry, fmt::format("synset '{}' sits on a parent cycle", synsets_[i].id));
      ancestors_[i].push_back(*node);
      node = synsets_[*node].parent;
    }
    for (const auto& m : synsets_[i].members) {
      auto& senses = senses_[m];
      if (senses.empty() || senses.back() != i) senses.push_back(i);
    }
  }
}

bool LexicalResource::contains(std::string_view stem) const { return senses_.find(stem) != senses_.end(); }

std::optional<std::size_t> LexicalResource::distance(std::string_view a, std::string_view b) const {
  auto ia = senses_.find(a);
  auto ib = senses_.find(b);
  if (ia == senses_.end() || ib == senses_.end()) return std::nullopt;

  std::optional<std::size_t> best;
  for (auto sa : ia->second) {
    const auto& up_a = ancestors_[sa];
    for (auto sb : ib->second) {
      const auto& up_b = ancestors_[sb];
      for (std::size_t da = 0; da < up_a.size(); ++da) {
        auto hit = std::find(up_b.begin(), up_b.end(), up_a[da]);
        if (hit == up_b.end()) continue;
        std::size_t d = da + static_cast<std::size_t>(hit - up_b.begin());
        if (!best || d < *best) best = d;
        break;
      }
    }
  }
  return best;
}

std::string LexicalResource::serialize() const {
  std::string out;
  for (const auto& s : synsets_)
    out += fmt::format("{}\t{}\t{}\n", s.id, fmt::join(s.members, "|"),
                       s.parent ? synsets_[*s.parent].id : "-");
  return out;
}

LexicalResource parse_lexical_resource(std::string_view text) {
  std::vector<LexicalResource::RawSynset> raw;
  for_each_data_line(text, [&](const std::string& line, std::size_t line_no) {
    auto t = trim(line);
    if (t.empty() || t.front() == '#') return;
    auto fields = split(line, '\t');
    if (fields.size() != 3)
      throw Error(ErrorKind::InvalidEntry, fmt::format("synsets line {}: expected 3 fields", line_no));
    LexicalResource::RawSynset s;
    s.id = std::string(trim(fields[0]));
    for (auto& m : split(fields[1], '|'))
      if (!trim(m).empty()) s.members.emplace_back(trim(m));
    auto parent = trim(fields[2]);
    if (parent != "-") s.parent_id = std::string(parent);
    raw.push_back(std::move(s));
  });
  return LexicalResource(raw);
}

LexicalResource load_lexical_resource(const std::filesystem::path& path) {
  return parse_lexical_resource(read_file(path));
}

StopWords::StopWords(const std::vector<std::string>& words) {
  for (const auto& w : words) {
    auto lw = to_lower(trim(w));
    if (lw.empty()) continue;
    stems_.insert(stem(lw));
    words_.push_back(std::move(lw));
  }
}

bool StopWords::contains(std::string_view stem) const { return stems_.find(stem) != stems_.end(); }

std::string StopWords::serialize() const { return fmt::format("{}\n", fmt::join(words_, "\n")); }

StopWords parse_stopwords(std::string_view text) {
  std::vector<std::string> words;
  for_each_data_line(text, [&](const std::string& line, std::size_t) {
    auto t = trim(line);
    if (!t.empty() && t.front() != '#') words.emplace_back(t);
  });
  return StopWords(words);
}

StopWords load_stopwords(const std::filesystem::path& path) { return parse_stopwords(read_file(path)); }

}  // namespace mass
