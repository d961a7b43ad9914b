#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gradelens/change.hpp"

namespace gradelens {

inline constexpr std::string_view kRosterCsvHeader =
    "student_id,last_name,first_name,email";
inline constexpr std::string_view kScoresCsvHeader =
    "student_id,item_id,raw_score";

// One physical line split on commas, honouring double-quoted fields.
// Returns false for an unterminated quote.
bool split_csv_line(std::string_view line, std::vector<std::string>& fields);

struct RejectedRow {
  std::size_t line = 0;  // 1-based; the header is line 1
  std::string reason;
};

struct ImportResult {
  std::size_t applied = 0;  // enrolled students or recorded scores
  std::vector<RejectedRow> rejected;
};

// Creates missing Student accounts (inactive, no password) and enrolls every
// valid row in one transaction. Bad rows are reported, good rows still apply.
// Errc::EmptyFile, or Errc::BadHeader with nothing applied.
ImportResult import_roster_csv(Transaction& tx, const Actor& actor,
                               const std::string& class_id,
                               std::string_view text);

// Records every valid row; items must belong to the class.
ImportResult import_scores_csv(Transaction& tx, const Actor& actor,
                               const std::string& class_id,
                               std::string_view text);

}  // namespace gradelens
