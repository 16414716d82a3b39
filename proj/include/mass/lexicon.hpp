#ifndef MASS_LEXICON_HPP
#define MASS_LEXICON_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace mass {

enum class TermKind { Sanctioned, Unsanctioned };

struct LexiconEntry {
  std::string term;  // lowercase, may contain spaces
  TermKind kind = TermKind::Sanctioned;
  std::vector<std::string> replacements;  // non-empty iff unsanctioned

  bool operator==(const LexiconEntry&) const = default;
};

/// Sanctioned BI-RADS descriptors plus the unsanctioned terms that map onto
/// them. Every replacement is itself a sanctioned entry.
class Lexicon {
 public:
  Lexicon() = default;

  // Validates and lowercases; throws DuplicateTerm, MissingReplacement,
  // DanglingReplacement or InvalidEntry.
  Lexicon(std::vector<LexiconEntry> entries, std::string version);

  const LexiconEntry* lookup(std::string_view term) const;

  const std::vector<LexiconEntry>& entries() const noexcept { return entries_; }
  const std::string& version() const noexcept { return version_; }

  std::vector<std::string> terms() const;
  std::vector<std::string> terms(TermKind kind) const;
  std::vector<std::string> multiword_terms() const;

 private:
  std::vector<LexiconEntry> entries_;  // sorted by term
  std::string version_;
};

// `term<TAB>kind<TAB>replacement1|replacement2`; '#' starts a comment line and
// "# version: X" sets the version.
Lexicon parse_lexicon(std::string_view text);
Lexicon load_lexicon(const std::filesystem::path& path);
std::string serialize_lexicon(const Lexicon& lexicon);

struct Synset {
  std::string id;
  std::vector<std::string> members;  // stems
  std::optional<std::size_t> parent;

  bool operator==(const Synset&) const = default;
};

/// Small synset forest standing in for a full lexical database. Distances are
/// counted in parent links between synsets.
class LexicalResource {
 public:
  LexicalResource() = default;

  struct RawSynset {
    std::string id;
    std::vector<std::string> members;
    std::string parent_id;  // empty for roots
  };

  // Stems members; throws InvalidEntry on duplicate ids, unknown parents or
  // cycles.
  explicit LexicalResource(const std::vector<RawSynset>& raw);

  bool contains(std::string_view stem) const;

  // Shortest synset-to-synset distance over all senses of a and b; nullopt
  // when either is missing or no sense pair shares a tree.
  std::optional<std::size_t> distance(std::string_view a, std::string_view b) const;

  const std::vector<Synset>& synsets() const noexcept { return synsets_; }
  std::string serialize() const;

 private:
  std::vector<Synset> synsets_;
  std::vector<std::vector<std::size_t>> ancestors_;  // self first, root last
  std::map<std::string, std::vector<std::size_t>, std::less<>> senses_;
};

// `synset_id<TAB>member1|member2<TAB>parent_id_or_dash`
LexicalResource parse_lexical_resource(std::string_view text);
LexicalResource load_lexical_resource(const std::filesystem::path& path);

/// Function-word list. Membership is tested on stems.
class StopWords {
 public:
  StopWords() = default;
  explicit StopWords(const std::vector<std::string>& words);

  bool contains(std::string_view stem) const;
  const std::vector<std::string>& words() const noexcept { return words_; }
  std::string serialize() const;

 private:
  std::vector<std::string> words_;
  std::set<std::string, std::less<>> stems_;
};

StopWords parse_stopwords(std::string_view text);
StopWords load_stopwords(const std::filesystem::path& path);

}  // namespace mass

#endif  // MASS_LEXICON_HPP
