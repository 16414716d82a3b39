#include "mass/syntax.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>
#include <utility>

#include <fmt/format.h>

#include "mass/corpus.hpp"
#include "mass/error.hpp"
#include "mass/text.hpp"

namespace mass {
namespace {

constexpr std::array<std::pair<PosTag, std::string_view>, 15> kTagNames = {{
    {PosTag::DT, "DT"},   {PosTag::JJ, "JJ"},   {PosTag::NN, "NN"},     {PosTag::NNS, "NNS"},
    {PosTag::VB, "VB"},   {PosTag::VBZ, "VBZ"}, {PosTag::VBN, "VBN"},   {PosTag::VBD, "VBD"},
    {PosTag::IN, "IN"},   {PosTag::RB, "RB"},   {PosTag::WDT, "WDT"},   {PosTag::PRPS, "PRP$"},
    {PosTag::CC, "CC"},   {PosTag::CD, "CD"},   {PosTag::TO, "TO"},
}};

const std::map<std::string_view, PosTag>& closed_class() {
  static const std::map<std::string_view, PosTag> kWords = [] {
    std::map<std::string_view, PosTag> m;
    for (auto w : {"a", "an", "the", "this", "that", "these", "those", "no", "each", "every", "any",
                   "some", "both", "all", "another", "either", "neither"})
      m[w] = PosTag::DT;
    for (auto w : {"in", "of", "with", "at", "on", "by", "for", "from", "within", "without", "into",
                   "over", "under", "near", "along", "across", "between", "since", "about", "after",
                   "before", "than", "per", "via", "as", "through", "behind", "beneath", "above",
                   "below", "during", "throughout", "upon", "among", "adjacent"})
      m[w] = PosTag::IN;
    for (auto w : {"my", "your", "his", "her", "its", "our", "their"}) m[w] = PosTag::PRPS;
    for (auto w : {"which", "whose", "whichever", "what"}) m[w] = PosTag::WDT;
    for (auto w : {"and", "or", "but", "nor"}) m[w] = PosTag::CC;
    m["to"] = PosTag::TO;
    for (auto w : {"is", "has", "does"}) m[w] = PosTag::VBZ;
    for (auto w : {"be", "are", "have", "do", "can", "may", "will", "should", "would", "could", "might",
                   "must", "shall"})
      m[w] = PosTag::VB;
    for (auto w : {"was", "were", "had", "did"}) m[w] = PosTag::VBD;
    m["been"] = PosTag::VBN;
    for (auto w : {"not", "again", "also", "very", "still", "now", "then", "there", "here", "too",
                   "previously", "otherwise"})
      m[w] = PosTag::RB;
    for (auto w : {"one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten",
                   "eleven", "twelve"})
      m[w] = PosTag::CD;
    return m;
  }();
  return kWords;
}

bool is_numeral(std::string_view w) {
  return !w.empty() && std::isdigit(static_cast<unsigned char>(w.front())) &&
         std::all_of(w.begin(), w.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)) || c == '.'; });
}

bool is_noun(PosTag t) { return t == PosTag::NN || t == PosTag::NNS; }
bool is_verb(PosTag t) { return t == PosTag::VB || t == PosTag::VBZ || t == PosTag::VBD || t == PosTag::VBN; }

PhraseLabel family(PosTag t) {
  switch (t) {
    case PosTag::JJ: return PhraseLabel::ADJP;
    case PosTag::RB: return PhraseLabel::ADVP;
    case PosTag::IN:
    case PosTag::TO:
    case PosTag::CC: return PhraseLabel::PP;  // connectives
    case PosTag::VB:
    case PosTag::VBZ:
    case PosTag::VBN:
    case PosTag::VBD: return PhraseLabel::VP;
    default: return PhraseLabel::NP;
  }
}

// Length of the NP starting at i, or 0.
std::size_t match_np(const std::vector<TaggedWord>& t, std::size_t i) {
  const std::size_t n = t.size();
  if (t[i].tag == PosTag::WDT) return 1;
  if (t[i].tag == PosTag::PRPS) {
    std::size_t j = i + 1;
    while (j < n && t[j].tag == PosTag::JJ) ++j;
    return j < n && t[j].tag == PosTag::NN ? j + 1 - i : 0;
  }
  std::size_t j = i;
  if (t[j].tag == PosTag::DT) ++j;
  while (j < n && t[j].tag == PosTag::JJ) ++j;
  std::size_t k = j;
  while (k < n && is_noun(t[k].tag)) ++k;
  return k > j ? k - i : 0;
}

std::size_t match_vp(const std::vector<TaggedWord>& t, std::size_t i) {
  std::size_t j = i;
  while (j < t.size() && (t[j].tag == PosTag::VB || t[j].tag == PosTag::VBZ || t[j].tag == PosTag::VBD)) ++j;
  if (j < t.size() && t[j].tag == PosTag::VBN) ++j;
  return j - i;
}

}  // namespace

std::string_view to_string(PosTag tag) {
  for (const auto& [t, name] : kTagNames)
    if (t == tag) return name;
  return "?";
}

std::optional<PosTag> parse_pos_tag(std::string_view s) {
  if (s == "PRPS") return PosTag::PRPS;
  for (const auto& [t, name] : kTagNames)
    if (name == s) return t;
  return std::nullopt;
}

std::string_view to_string(PhraseLabel label) {
  switch (label) {
    case PhraseLabel::NP: return "NP";
    case PhraseLabel::VP: return "VP";
    case PhraseLabel::PP: return "PP";
    case PhraseLabel::ADVP: return "ADVP";
    case PhraseLabel::ADJP: return "ADJP";
  }
  return "?";
}

std::string ChunkPattern::render() const {
  std::string out = fmt::format("[{}:", to_string(label));
  for (auto t : tags) out += fmt::format(" {}", to_string(t));
  out += "]";
  return out;
}

std::optional<PosTag> PosLexicon::lookup(std::string_view word) const {
  auto it = entries_.find(word);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::string PosLexicon::serialize() const {
  std::string out;
  for (const auto& [word, tag] : entries_) out += fmt::format("{}\t{}\n", word, to_string(tag));
  return out;
}

PosLexicon parse_pos_lexicon(std::string_view text) {
  std::map<std::string, PosTag> entries;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto tab = t.find('\t');
    if (tab == std::string_view::npos)
      throw Error(ErrorKind::InvalidEntry, fmt::format("postags line {}: expected word<TAB>tag", line_no));
    auto tag = parse_pos_tag(trim(t.substr(tab + 1)));
    if (!tag)
      throw Error(ErrorKind::InvalidEntry, fmt::format("postags line {}: unknown tag '{}'", line_no, t.substr(tab + 1)));
    entries[to_lower(trim(t.substr(0, tab)))] = *tag;
  }
  return PosLexicon(std::move(entries));
}

PosLexicon load_pos_lexicon(const std::filesystem::path& path) { return parse_pos_lexicon(read_file(path)); }

PosTag PosTagger::tag_word(std::string_view word) const {
  const auto& closed = closed_class();
  if (auto it = closed.find(word); it != closed.end()) return it->second;
  if (is_numeral(word)) return PosTag::CD;
  if (auto tag = lexicon_.lookup(word)) return *tag;

  if (word.size() > 4 && word.ends_with("ly")) return PosTag::RB;
  if ((word.size() > 5 && word.ends_with("ing")) || (word.size() > 4 && word.ends_with("ed"))) return PosTag::VBN;
  if (word.size() > 3 && word.ends_with('s')) {
    auto base = stem(word);
    if (base != word) {
      auto tag = lexicon_.lookup(base);
      if (tag && is_noun(*tag)) return PosTag::NNS;
    }
  }
  return PosTag::NN;
}

std::vector<TaggedWord> PosTagger::tag(const std::vector<std::string>& words) const {
  std::vector<TaggedWord> out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back({w, tag_word(w)});
  return out;
}

std::vector<Chunk> chunk(const std::vector<TaggedWord>& tagged) {
  std::vector<Chunk> chunks;
  std::size_t i = 0;
  while (i < tagged.size()) {
    PosTag head = tagged[i].tag;
    PhraseLabel label = family(head);
    std::size_t len = 0;
    if (auto np = match_np(tagged, i); np > 0) {
      label = PhraseLabel::NP;
      len = np;
    } else if (head == PosTag::IN) {
      label = PhraseLabel::PP;
      len = 1;
    } else if (is_verb(head)) {
      label = PhraseLabel::VP;
      len = match_vp(tagged, i);
    } else if (head == PosTag::RB) {
      label = PhraseLabel::ADVP;
      while (i + len < tagged.size() && tagged[i + len].tag == PosTag::RB) ++len;
    }
    if (len == 0) len = 1;

    Chunk c;
    c.pattern.label = label;
    for (std::size_t k = i; k < i + len; ++k) {
      c.pattern.tags.push_back(tagged[k].tag);
      c.words.push_back(tagged[k].word);
    }
    chunks.push_back(std::move(c));
    i += len;
  }
  return chunks;
}

SentenceSyntax extract_syntax(const std::vector<Chunk>& chunks, const std::vector<std::string>& important_terms) {
  SentenceSyntax syntax;
  std::vector<std::string> word_stems;
  std::vector<std::size_t> word_chunk;
  for (std::size_t c = 0; c < chunks.size(); ++c) {
    const auto& ch = chunks[c];
    std::string with_words = fmt::format("[{}", to_string(ch.pattern.label));
    std::string tags = with_words;
    for (std::size_t k = 0; k < ch.words.size(); ++k) {
      with_words += fmt::format(" {}/{}", ch.words[k], to_string(ch.pattern.tags[k]));
      tags += fmt::format(" {}", to_string(ch.pattern.tags[k]));
      word_stems.push_back(stem(ch.words[k]));
      word_chunk.push_back(c + 1);
    }
    if (c) {
      syntax.tagged_with_words.push_back(' ');
      syntax.tags_only.push_back(' ');
    }
    syntax.tagged_with_words += with_words + "]";
    syntax.tags_only += tags + "]";

    auto& occurrence = syntax.patterns[ch.pattern.render()];
    ++occurrence.count;
    occurrence.positions.push_back(c + 1);
  }

  for (const auto& term : important_terms) {
    std::vector<std::string> parts;
    std::istringstream in(term);
    for (std::string p; in >> p;) parts.push_back(p);
    if (parts.empty() || parts.size() > word_stems.size()) continue;
    std::vector<std::size_t> where;
    for (std::size_t i = 0; i + parts.size() <= word_stems.size(); ++i)
      if (std::equal(parts.begin(), parts.end(), word_stems.begin() + static_cast<std::ptrdiff_t>(i)))
        where.push_back(word_chunk[i]);
    if (!where.empty()) syntax.important_term_locations[term] = std::move(where);
  }
  return syntax;
}

SentenceSyntax analyze_sentence(std::string_view text, const PosTagger& tagger,
                                const std::vector<std::string>& important_terms) {
  return extract_syntax(chunk(tagger.tag(split_words(text))), important_terms);
}

}  // namespace mass
