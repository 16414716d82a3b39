#include "mass/resources.hpp"

#include <openssl/evp.h>

#include <memory>

#include <fmt/format.h>

#include "mass/error.hpp"

namespace mass {

std::string sha256_hex(std::string_view data) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1)
    throw Error(ErrorKind::Io, "SHA-256 computation failed");
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

std::string Resources::digest() const {
  std::string canonical;
  canonical += "[lexicon]\n" + serialize_lexicon(lexicon);
  canonical += "[synsets]\n" + lexical.serialize();
  canonical += "[stopwords]\n" + stopwords.serialize();
  canonical += "[postags]\n" + tags.serialize();
  return sha256_hex(canonical);
}

Resources load_resources(const std::filesystem::path& dir,
                         const std::optional<std::filesystem::path>& lexicon_override) {
  Resources r;
  r.lexicon = load_lexicon(lexicon_override.value_or(dir / "lexicon.tsv"));
  r.lexical = load_lexical_resource(dir / "synsets.tsv");
  r.stopwords = load_stopwords(dir / "stopwords.txt");
  r.tags = load_pos_lexicon(dir / "postags.tsv");
  return r;
}

}  // namespace mass
