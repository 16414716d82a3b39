#ifndef MASS_TEXT_HPP
#define MASS_TEXT_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace mass {

struct Token {
  std::string surface;  // lowercased; multiword terms keep their inner spaces
  std::string stem;
  std::size_t position = 0;

  bool operator==(const Token&) const = default;
};

struct Sentence {
  std::size_t index = 0;  // position within the findings section
  std::string text;
  std::vector<Token> tokens;

  bool operator==(const Sentence&) const = default;
};

std::string to_lower(std::string_view s);
std::string_view trim(std::string_view s);

// Suffix stripper. The first applicable rule wins and a rule only fires when
// the remaining stem has at least three characters:
//
//   1. -ies -> -y
//   2. -es  -> (removed) when preceded by s, x, z, ch or sh
//   3. -s   -> (removed) unless the word ends in ss, us or is
//   4. -ing -> (removed)
//   5. -ed  -> (removed)
//
// After rules 4 and 5 a three-letter consonant-vowel-consonant stem whose last
// letter is not w, x or y gets its "e" back ("noted" -> "note").
std::string stem(std::string_view word);

// Stems every space-separated word of a (possibly multiword) term.
std::string stem_phrase(std::string_view phrase);

// Lowercased word surfaces with punctuation stripped. Hyphens and apostrophes
// survive between word characters, dots between digits.
std::vector<std::string> split_words(std::string_view text);

// Splits on '.', '!' or '?' followed by whitespace or end of text. A period
// after "cm", "mm" or "o'clock" does not end the sentence unless the next word
// starts with an uppercase letter. Pieces are trimmed and blank pieces dropped.
std::vector<std::string> split_sentences(std::string_view text);

/// Tokenizer that fuses known multiword phrases (longest match, compared on
/// stems) into single tokens.
class Tokenizer {
 public:
  Tokenizer() = default;
  explicit Tokenizer(const std::vector<std::string>& phrases);

  std::vector<Token> tokenize(std::string_view text) const;

  // Segments findings text and tokenizes each sentence; indices are 0..n-1.
  std::vector<Sentence> sentences(std::string_view text) const;

 private:
  std::vector<std::vector<std::string>> phrases_;  // stemmed words, longest first
};

// Tokenizes without any phrase fusion.
std::vector<Token> tokenize(std::string_view text);

}  // namespace mass

#endif  // MASS_TEXT_HPP
