#include "mass/error.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

namespace mass {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::MissingFindings: return "MissingFindings";
    case ErrorKind::EmptyCorpus: return "EmptyCorpus";
    case ErrorKind::InvalidCategory: return "InvalidCategory";
    case ErrorKind::UnlabeledReport: return "UnlabeledReport";
    case ErrorKind::DuplicateId: return "DuplicateId";
    case ErrorKind::DuplicateTerm: return "DuplicateTerm";
    case ErrorKind::DanglingReplacement: return "DanglingReplacement";
    case ErrorKind::MissingReplacement: return "MissingReplacement";
    case ErrorKind::InvalidEntry: return "InvalidEntry";
    case ErrorKind::EmptyPatternSet: return "EmptyPatternSet";
    case ErrorKind::InvalidPattern: return "InvalidPattern";
    case ErrorKind::OverlappingSpans: return "OverlappingSpans";
    case ErrorKind::SpanOutOfBounds: return "SpanOutOfBounds";
    case ErrorKind::CategoryMismatch: return "CategoryMismatch";
    case ErrorKind::EmptyAfterStopwords: return "EmptyAfterStopwords";
    case ErrorKind::WeightsInvalid: return "WeightsInvalid";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::MissingCategory: return "MissingCategory";
    case ErrorKind::VersionMismatch: return "VersionMismatch";
    case ErrorKind::CorruptModel: return "CorruptModel";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(fmt::format("{}: {}", to_string(kind), message)),
      kind_(kind) {}

MissingCategoryError::MissingCategoryError(std::vector<int> missing)
    : Error(ErrorKind::MissingCategory,
            fmt::format("no training reports for categories {}",
                        fmt::join(missing, ","))),
      missing_(std::move(missing)) {}

}  // namespace mass
