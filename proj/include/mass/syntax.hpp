#ifndef MASS_SYNTAX_HPP
#define MASS_SYNTAX_HPP

#include <compare>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mass {

enum class PosTag { DT, JJ, NN, NNS, VB, VBZ, VBN, VBD, IN, RB, WDT, PRPS, CC, CD, TO };

std::string_view to_string(PosTag tag);  // PRPS renders as "PRP$"
std::optional<PosTag> parse_pos_tag(std::string_view s);

enum class PhraseLabel { NP, VP, PP, ADVP, ADJP };

std::string_view to_string(PhraseLabel label);

struct ChunkPattern {
  PhraseLabel label = PhraseLabel::NP;
  std::vector<PosTag> tags;

  // "[NP: DT JJ NN]"
  std::string render() const;
  auto operator<=>(const ChunkPattern&) const = default;
};

struct TaggedWord {
  std::string word;
  PosTag tag = PosTag::NN;

  bool operator==(const TaggedWord&) const = default;
};

struct Chunk {
  ChunkPattern pattern;
  std::vector<std::string> words;

  bool operator==(const Chunk&) const = default;
};

/// Domain word -> tag table (`word<TAB>TAG` file).
class PosLexicon {
 public:
  PosLexicon() = default;
  explicit PosLexicon(const std::map<std::string, PosTag>& entries) : entries_(entries.begin(), entries.end()) {}

  std::optional<PosTag> lookup(std::string_view word) const;
  const std::map<std::string, PosTag, std::less<>>& entries() const noexcept { return entries_; }
  std::string serialize() const;

 private:
  std::map<std::string, PosTag, std::less<>> entries_;
};

PosLexicon parse_pos_lexicon(std::string_view text);
PosLexicon load_pos_lexicon(const std::filesystem::path& path);

/// Deterministic rule tagger. A word is tagged by the first rule that applies:
///   1. closed-class words (determiners, prepositions, pronouns, auxiliaries,
///      conjunctions) and numerals
///   2. the domain lexicon
///   3. suffixes: -ly -> RB, -ing/-ed -> VBN, plural of a lexicon noun -> NNS
///   4. NN
class PosTagger {
 public:
  PosTagger() = default;
  explicit PosTagger(PosLexicon lexicon) : lexicon_(std::move(lexicon)) {}

  PosTag tag_word(std::string_view word) const;
  std::vector<TaggedWord> tag(const std::vector<std::string>& words) const;

  const PosLexicon& lexicon() const noexcept { return lexicon_; }

 private:
  PosLexicon lexicon_;
};

// Greedy left-to-right chunking:
//   NP   <- DT? JJ* (NN|NNS)+ | WDT | PRP$ JJ* NN
//   PP   <- IN
//   VP   <- (VB|VBZ|VBD)* VBN?   (a participle closes the phrase)
//   ADVP <- RB+
// Anything else becomes a one-word chunk labelled by its tag family.
std::vector<Chunk> chunk(const std::vector<TaggedWord>& tagged);

struct PatternOccurrence {
  std::size_t count = 0;
  std::vector<std::size_t> positions;  // 1-based chunk positions, increasing

  bool operator==(const PatternOccurrence&) const = default;
};

struct SentenceSyntax {
  std::string tagged_with_words;  // "[NP a/DT focal/JJ asymmetry/NN] [PP in/IN] ..."
  std::string tags_only;          // "[NP DT JJ NN] [PP IN] ..."
  std::map<std::string, PatternOccurrence> patterns;  // keyed by ChunkPattern::render()
  std::map<std::string, std::vector<std::size_t>> important_term_locations;

  bool operator==(const SentenceSyntax&) const = default;
};

// `important_terms` are stemmed phrases; each occurrence is located by the
// chunk holding its first word.
SentenceSyntax extract_syntax(const std::vector<Chunk>& chunks, const std::vector<std::string>& important_terms);

SentenceSyntax analyze_sentence(std::string_view text, const PosTagger& tagger,
                                const std::vector<std::string>& important_terms = {});

}  // namespace mass

#endif  // MASS_SYNTAX_HPP
