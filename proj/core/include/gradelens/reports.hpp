#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "gradelens/analytics.hpp"
#include "gradelens/canonical_json.hpp"
#include "gradelens/domain.hpp"
#include "gradelens/gradebook.hpp"

// JSON and CSV shapes of everything the API serves and the CLI exports.
// Display rounding happens here and only here: 4 places for attainment
// scores, 2 places for rates and means.
namespace gradelens {

inline constexpr int kScorePlaces = 4;
inline constexpr int kRatePlaces = 2;
inline constexpr std::string_view kAttainmentCsvHeader =
    "student_id,outcome_code,scope,score,attained,evidence_count";

Json to_json(const AttainmentRecord& rec);
Json to_json(const AttainmentRate& rate);
Json to_json(const ClassAttainment& report);
Json to_json(const Distribution& dist);
Json to_json(const ProgramRollup& rollup);
Json to_json(const std::vector<TrendPoint>& trend);
Json to_json(const GradeSummary& summary);
Json to_json(const std::vector<SkillSummaryRow>& rows);
Json to_json(const std::vector<StudentSkill>& rows);
Json to_json(const std::vector<StudentOutcomeView>& rows);

// Attainment records plus one distribution per outcome for a scope, all
// computed from one snapshot.
struct AnalyticsReport {
  Scope scope;
  double threshold = 0.0;
  std::vector<AttainmentRecord> records;   // by outcome, then student
  std::vector<Distribution> distributions; // by outcome; zero bands kept
};

// Covers every outcome code referenced by a rubric mapping.
AnalyticsReport build_analytics_report(const State& state, const Scope& scope,
                                       double theta, const BandScheme& scheme);

Json to_json(const AnalyticsReport& report);
std::string to_csv(const std::vector<AttainmentRecord>& records);

enum class ExportFormat { Csv, Json };
ExportFormat parse_export_format(std::string_view text);  // ValidationError

// The exact bytes export_report() writes.
std::string render_report(const AnalyticsReport& report, ExportFormat format);

// Writes the rendering to `destination` and returns the byte count.
// Errc::IoFailure on any write error.
std::size_t export_report(const AnalyticsReport& report, ExportFormat format,
                          const std::filesystem::path& destination);

}  // namespace gradelens
