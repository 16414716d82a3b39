#include "mass/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace mass {
namespace {

bool is_word_byte(char c) {
  auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) || u >= 0x80;
}

bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string restore_e(std::string stem) {
  if (stem.size() == 3 && !is_vowel(stem[0]) && is_vowel(stem[1]) &&
      !is_vowel(stem[2]) && stem[2] != 'w' && stem[2] != 'x' && stem[2] != 'y')
    stem.push_back('e');
  return stem;
}

constexpr std::size_t kMinStem = 3;

}  // namespace

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string_view trim(std::string_view s) {
  auto space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  while (!s.empty() && space(s.front())) s.remove_prefix(1);
  while (!s.empty() && space(s.back())) s.remove_suffix(1);
  return s;
}

std::string stem(std::string_view word) {
  std::string w = to_lower(word);
  const std::size_t n = w.size();

  if (ends_with(w, "ies") && n - 3 + 1 >= kMinStem)
    return w.substr(0, n - 3) + "y";
  if (ends_with(w, "es") && n - 2 >= kMinStem) {
    std::string_view base(w.data(), n - 2);
    if (ends_with(base, "s") || ends_with(base, "x") || ends_with(base, "z") ||
        ends_with(base, "ch") || ends_with(base, "sh"))
      return std::string(base);
  }
  if (ends_with(w, "s") && !ends_with(w, "ss") && !ends_with(w, "us") &&
      !ends_with(w, "is") && n - 1 >= kMinStem)
    return w.substr(0, n - 1);
  if (ends_with(w, "ing") && n - 3 >= kMinStem)
    return restore_e(w.substr(0, n - 3));
  if (ends_with(w, "ed") && n - 2 >= kMinStem)
    return restore_e(w.substr(0, n - 2));
  return w;
}

std::string stem_phrase(std::string_view phrase) {
  std::string out;
  for (const auto& word : split_words(phrase)) {
    if (!out.empty()) out.push_back(' ');
    out += stem(word);
  }
  return out;
}

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> words;
  std::string current;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (is_word_byte(c)) {
      current.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
      continue;
    }
    bool joins = !current.empty() && i + 1 < text.size() && is_word_byte(text[i + 1]);
    if (joins && (c == '-' || c == '\'')) {
      current.push_back(c);
      continue;
    }
    if (joins && c == '.' && std::isdigit(static_cast<unsigned char>(current.back())) &&
        std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
      current.push_back(c);
      continue;
    }
    if (!current.empty()) words.push_back(std::move(current));
    current.clear();
  }
  if (!current.empty()) words.push_back(std::move(current));
  return words;
}

std::vector<std::string> split_sentences(std::string_view text) {
  static constexpr std::array<std::string_view, 3> kAbbreviations = {"cm", "mm", "o'clock"};

  std::vector<std::string> out;
  std::size_t begin = 0;
  auto emit = [&](std::size_t end) {
    auto piece = trim(text.substr(begin, end - begin));
    if (!piece.empty()) out.emplace_back(piece);
    begin = end;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c != '.' && c != '!' && c != '?') continue;
    bool at_end = i + 1 == text.size();
    if (!at_end && !std::isspace(static_cast<unsigned char>(text[i + 1]))) continue;

    if (c == '.' && !at_end) {
      std::size_t w = i;
      while (w > begin && !std::isspace(static_cast<unsigned char>(text[w - 1]))) --w;
      std::string prev = to_lower(text.substr(w, i - w));
      bool abbreviation = std::find(kAbbreviations.begin(), kAbbreviations.end(), prev) !=
                          kAbbreviations.end();
      if (abbreviation) {
        std::size_t j = i + 1;
        while (j < text.size() && std::isspace(static_cast<unsigned char>(text[j]))) ++j;
        bool next_upper = j < text.size() && std::isupper(static_cast<unsigned char>(text[j]));
        if (!next_upper) continue;
      }
    }
    emit(i + 1);
  }
  emit(text.size());
  return out;
}

Tokenizer::Tokenizer(const std::vector<std::string>& phrases) {
  for (const auto& phrase : phrases) {
    auto words = split_words(phrase);
    if (words.size() < 2) continue;
    for (auto& w : words) w = stem(w);
    phrases_.push_back(std::move(words));
  }
  std::sort(phrases_.begin(), phrases_.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() > b.size() : a < b;
  });
  phrases_.erase(std::unique(phrases_.begin(), phrases_.end()), phrases_.end());
}

std::vector<Token> Tokenizer::tokenize(std::string_view text) const {
  auto words = split_words(text);
  std::vector<std::string> stems;
  stems.reserve(words.size());
  for (const auto& w : words) stems.push_back(stem(w));

  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < words.size()) {
    std::size_t span = 1;
    for (const auto& phrase : phrases_) {
      if (i + phrase.size() > words.size()) continue;
      if (std::equal(phrase.begin(), phrase.end(), stems.begin() + static_cast<std::ptrdiff_t>(i))) {
        span = phrase.size();
        break;
      }
    }
    Token token;
    token.position = tokens.size();
    for (std::size_t k = 0; k < span; ++k) {
      if (k) {
        token.surface.push_back(' ');
        token.stem.push_back(' ');
      }
      token.surface += words[i + k];
      token.stem += stems[i + k];
    }
    tokens.push_back(std::move(token));
    i += span;
  }
  return tokens;
}

std::vector<Sentence> Tokenizer::sentences(std::string_view text) const {
  std::vector<Sentence> out;
  for (auto& piece : split_sentences(text)) {
    Sentence s;
    s.tokens = tokenize(piece);
    if (s.tokens.empty()) continue;
    s.index = out.size();
    s.text = std::move(piece);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Token> tokenize(std::string_view text) { return Tokenizer{}.tokenize(text); }

}  // namespace mass
