#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gradelens {

/// Every failure the library reports. Each value maps to one stable machine
/// code and one HTTP status (see machine_code() and http_status()).
enum class Errc {
  // accounts and sessions
  WeakPassword,
  BadCredentials,
  AccountInactive,
  Unauthenticated,
  Forbidden,
  // lookups
  NotFound,
  UnknownUser,
  UnknownCourse,
  UnknownClass,
  UnknownOutcome,
  UnknownRubric,
  UnknownSkill,
  UnknownComponent,
  UnknownItem,
  // duplicates and concurrency
  DuplicateCode,
  AlreadyEnrolled,
  ConflictDetected,
  // validation
  ValidationError,
  ValidationFailed,
  BadBody,
  EmptyAttribute,
  NotAnInstructor,
  NotAStudent,
  NotEnrolled,
  EmptyCriteria,
  BadLevelRange,
  UnmappedCriterion,
  OutOfRange,
  DegenerateRange,
  EmptyInput,
  NonPositiveWeight,
  OutOfDomain,
  InvalidScale,
  WeightsNotNormalized,
  IncompleteComponents,
  BadHeader,
  EmptyFile,
  // absent evidence
  NoScores,
  NoEvidence,
  NoEvaluatedStudents,
  EmptyScope,
  // storage
  CorruptJournal,
  IncompatibleSchemaVersion,
  IoFailure,
};

std::string_view machine_code(Errc code) noexcept;
int http_status(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message,
        std::vector<std::string> details = {})
      : std::runtime_error(message), code_(code), details_(std::move(details)) {}

  Errc code() const noexcept { return code_; }
  // Structured payload, e.g. the missing component names of
  // IncompleteComponents.
  const std::vector<std::string>& details() const noexcept { return details_; }

 private:
  Errc code_;
  std::vector<std::string> details_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message,
                              std::vector<std::string> details = {}) {
  throw Error(code, message, std::move(details));
}

}  // namespace gradelens
