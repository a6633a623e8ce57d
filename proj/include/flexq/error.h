#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace flexq {

enum class ErrorKind {
  kFileMissing,
  kMalformedFormat,
  kInvariantViolation,
  kAmbiguity,
  kIoFailure,
  kHeaderMismatch,
  kDuplicateTable,
  kUnknownTable,
  kUnknownField,
  kEmptyQuery,
  kEmptyDisplay,
  kNoOperatorFound,
  kMissingLiteral,
  kMissingField,
  kUnresolvableTable,
  kUnresolvableField,
  kAmbiguousField,
  kEmptyCandidateSet,
  kNoAlternative,
  kTypeMismatch,
  kEmptyAfterNormalization,
  kUnknownEntry,
  kStorageIo,
  kBadVerdict,
};

// Stable kebab-case code used in messages, HTTP bodies and CLI output.
std::string_view error_code(ErrorKind kind);

// A near-miss reported alongside resolution failures.
struct Candidate {
  std::string name;
  int distance = 0;

  bool operator==(const Candidate&) const = default;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message, std::vector<Candidate> candidates = {},
        std::string stage = {});

  ErrorKind kind() const { return kind_; }
  std::string_view code() const { return error_code(kind_); }
  const std::string& stage() const { return stage_; }
  const std::string& detail() const { return detail_; }
  const std::vector<Candidate>& candidates() const { return candidates_; }

  // Returns a copy tagged with the pipeline stage that raised it. The first
  // annotation wins so inner stages are not overwritten by outer wrappers.
  Error with_stage(std::string stage) const;

 private:
  ErrorKind kind_;
  std::string stage_;
  std::string detail_;
  std::vector<Candidate> candidates_;
};

}  // namespace flexq
