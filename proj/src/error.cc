#include "flexq/error.h"

#include <utility>

namespace flexq {

std::string_view error_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kFileMissing: return "file-missing";
    case ErrorKind::kMalformedFormat: return "malformed-format";
    case ErrorKind::kInvariantViolation: return "invariant-violation";
    case ErrorKind::kAmbiguity: return "ambiguity";
    case ErrorKind::kIoFailure: return "io-failure";
    case ErrorKind::kHeaderMismatch: return "header-mismatch";
    case ErrorKind::kDuplicateTable: return "duplicate-table";
    case ErrorKind::kUnknownTable: return "unknown-table";
    case ErrorKind::kUnknownField: return "unknown-field";
    case ErrorKind::kEmptyQuery: return "empty-query";
    case ErrorKind::kEmptyDisplay: return "empty-display";
    case ErrorKind::kNoOperatorFound: return "no-operator-found";
    case ErrorKind::kMissingLiteral: return "missing-literal";
    case ErrorKind::kMissingField: return "missing-field";
    case ErrorKind::kUnresolvableTable: return "unresolvable-table";
    case ErrorKind::kUnresolvableField: return "unresolvable-field";
    case ErrorKind::kAmbiguousField: return "ambiguous-field";
    case ErrorKind::kEmptyCandidateSet: return "empty-candidate-set";
    case ErrorKind::kNoAlternative: return "no-alternative";
    case ErrorKind::kTypeMismatch: return "type-mismatch";
    case ErrorKind::kEmptyAfterNormalization: return "empty-after-normalization";
    case ErrorKind::kUnknownEntry: return "unknown-entry";
    case ErrorKind::kStorageIo: return "storage-io";
    case ErrorKind::kBadVerdict: return "bad-verdict";
  }
  return "unknown";
}

namespace {

std::string format_message(ErrorKind kind, const std::string& stage, const std::string& detail) {
  std::string out;
  if (!stage.empty()) out += "[" + stage + "] ";
  out += error_code(kind);
  if (!detail.empty()) out += ": " + detail;
  return out;
}

}  // namespace

Error::Error(ErrorKind kind, std::string message, std::vector<Candidate> candidates,
             std::string stage)
    : std::runtime_error(format_message(kind, stage, message)),
      kind_(kind),
      stage_(std::move(stage)),
      detail_(std::move(message)),
      candidates_(std::move(candidates)) {}

Error Error::with_stage(std::string stage) const {
  if (!stage_.empty()) return *this;
  return Error(kind_, detail_, candidates_, std::move(stage));
}

}  // namespace flexq
