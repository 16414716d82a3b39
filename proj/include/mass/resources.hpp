#ifndef MASS_RESOURCES_HPP
#define MASS_RESOURCES_HPP

#include <filesystem>
#include <optional>
#include <string>

#include "mass/lexicon.hpp"
#include "mass/syntax.hpp"

namespace mass {

/// Everything a model depends on besides its training reports.
struct Resources {
  Lexicon lexicon;
  LexicalResource lexical;
  StopWords stopwords;
  PosLexicon tags;

  // SHA-256 (hex) over the canonical serialization of all four resources.
  std::string digest() const;
};

// Loads lexicon.tsv, synsets.tsv, stopwords.txt and postags.tsv from dir.
// `lexicon_override` replaces dir/lexicon.tsv when given.
Resources load_resources(const std::filesystem::path& dir,
                         const std::optional<std::filesystem::path>& lexicon_override = std::nullopt);

std::string sha256_hex(std::string_view data);

}  // namespace mass

#endif  // MASS_RESOURCES_HPP
