#ifndef MASS_ERROR_HPP
#define MASS_ERROR_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace mass {

enum class ErrorKind {
  MissingFindings,
  EmptyCorpus,
  InvalidCategory,
  UnlabeledReport,
  DuplicateId,
  DuplicateTerm,
  DanglingReplacement,
  MissingReplacement,
  InvalidEntry,
  EmptyPatternSet,
  InvalidPattern,
  OverlappingSpans,
  SpanOutOfBounds,
  CategoryMismatch,
  EmptyAfterStopwords,
  WeightsInvalid,
  InvalidConfig,
  MissingCategory,
  VersionMismatch,
  CorruptModel,
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by training when one or more categories have no reports.
class MissingCategoryError : public Error {
 public:
  explicit MissingCategoryError(std::vector<int> missing);

  const std::vector<int>& missing() const noexcept { return missing_; }

 private:
  std::vector<int> missing_;
};

}  // namespace mass

#endif  // MASS_ERROR_HPP
