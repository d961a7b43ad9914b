#include "gradelens/error.hpp"

namespace gradelens {

std::string_view machine_code(Errc code) noexcept {
  switch (code) {
    case Errc::WeakPassword: return "weak_password";
    case Errc::BadCredentials: return "bad_credentials";
    case Errc::AccountInactive: return "account_inactive";
    case Errc::Unauthenticated: return "unauthenticated";
    case Errc::Forbidden: return "forbidden";
    case Errc::NotFound: return "not_found";
    case Errc::UnknownUser: return "unknown_user";
    case Errc::UnknownCourse: return "unknown_course";
    case Errc::UnknownClass: return "unknown_class";
    case Errc::UnknownOutcome: return "unknown_outcome";
    case Errc::UnknownRubric: return "unknown_rubric";
    case Errc::UnknownSkill: return "unknown_skill";
    case Errc::UnknownComponent: return "unknown_component";
    case Errc::UnknownItem: return "unknown_item";
    case Errc::DuplicateCode: return "duplicate_code";
    case Errc::AlreadyEnrolled: return "already_enrolled";
    case Errc::ConflictDetected: return "conflict_detected";
    case Errc::ValidationError: return "validation_error";
    case Errc::ValidationFailed: return "validation_failed";
    case Errc::BadBody: return "bad_body";
    case Errc::EmptyAttribute: return "empty_attribute";
    case Errc::NotAnInstructor: return "not_an_instructor";
    case Errc::NotAStudent: return "not_a_student";
    case Errc::NotEnrolled: return "not_enrolled";
    case Errc::EmptyCriteria: return "empty_criteria";
    case Errc::BadLevelRange: return "bad_level_range";
    case Errc::UnmappedCriterion: return "unmapped_criterion";
    case Errc::OutOfRange: return "out_of_range";
    case Errc::DegenerateRange: return "degenerate_range";
    case Errc::EmptyInput: return "empty_input";
    case Errc::NonPositiveWeight: return "non_positive_weight";
    case Errc::OutOfDomain: return "out_of_domain";
    case Errc::InvalidScale: return "invalid_scale";
    case Errc::WeightsNotNormalized: return "weights_not_normalized";
    case Errc::IncompleteComponents: return "incomplete_components";
    case Errc::BadHeader: return "bad_header";
    case Errc::EmptyFile: return "empty_file";
    case Errc::NoScores: return "no_scores";
    case Errc::NoEvidence: return "no_evidence";
    case Errc::NoEvaluatedStudents: return "no_evaluated_students";
    case Errc::EmptyScope: return "empty_scope";
    case Errc::CorruptJournal: return "corrupt_journal";
    case Errc::IncompatibleSchemaVersion: return "incompatible_schema_version";
    case Errc::IoFailure: return "io_failure";
  }
  return "internal";
}

int http_status(Errc code) noexcept {
  switch (code) {
    case Errc::BadCredentials:
    case Errc::AccountInactive:
    case Errc::Unauthenticated:
      return 401;
    case Errc::Forbidden:
      return 403;
    case Errc::NotFound:
    case Errc::UnknownUser:
    case Errc::UnknownCourse:
    case Errc::UnknownClass:
    case Errc::UnknownRubric:
    case Errc::UnknownSkill:
    case Errc::UnknownComponent:
    case Errc::UnknownItem:
    case Errc::NoScores:
    case Errc::NoEvidence:
    case Errc::NoEvaluatedStudents:
    case Errc::EmptyScope:
      return 404;
    case Errc::DuplicateCode:
    case Errc::AlreadyEnrolled:
    case Errc::ConflictDetected:
      return 409;
    case Errc::CorruptJournal:
    case Errc::IncompatibleSchemaVersion:
    case Errc::IoFailure:
      return 500;
    default:
      return 422;
  }
}

}  // namespace gradelens
