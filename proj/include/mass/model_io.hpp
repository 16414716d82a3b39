#ifndef MASS_MODEL_IO_HPP
#define MASS_MODEL_IO_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "mass/classifier.hpp"

namespace mass {

// Pretty-printed JSON with sorted keys; equal bundles give equal bytes.
// Layout documented in docs/model-format.md.
std::string serialize_model(const ModelBundle& model);

// Throws VersionMismatch for an unknown format_version, CorruptModel for
// malformed documents or, when `expected_digest` is given, a digest mismatch.
ModelBundle parse_model(std::string_view text, const std::optional<std::string>& expected_digest = std::nullopt);

void save_model(const ModelBundle& model, const std::filesystem::path& path);
ModelBundle load_model(const std::filesystem::path& path, const Resources& resources);

// Human-readable view of one centroid: term table, then each representative
// sentence with its terms, syntax strings and pattern counts.
std::string export_centroid_xml(const CentroidVector& centroid);

}  // namespace mass

#endif  // MASS_MODEL_IO_HPP
