#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gradelens/bands.hpp"
#include "gradelens/model.hpp"
#include "gradelens/scope.hpp"
#include "gradelens/state.hpp"

namespace gradelens {

// (level - min) / (max - min). Errc::DegenerateRange when max <= min,
// Errc::OutOfRange when the level is outside [min, max].
double normalize_level(int level, int min_level, int max_level);

// Σ wᵢvᵢ / Σ wᵢ, clamped to [min v, max v]. Errc::EmptyInput for no values or
// mismatched lengths; Errc::NonPositiveWeight for any weight <= 0.
double weighted_mean(std::span<const double> values,
                     std::span<const double> weights);

struct AttainmentRecord {
  std::string student_id;
  std::string outcome_code;
  Scope scope;
  double score = 0.0;  // [0, 1], full precision
  bool attained = false;
  int evidence_count = 0;  // contributing (evaluation, criterion) pairs
};

// Weighted mean of normalized levels over every (evaluation, criterion) pair
// in scope whose mappings include the outcome, weighted by
// criterion.weight × map_weight. Errc::NoEvidence when no pair contributes.
AttainmentRecord student_outcome_attainment(const State& state,
                                            const std::string& student_id,
                                            const std::string& outcome_code,
                                            const Scope& scope, double theta);

// Attainment records of every student with evidence in scope, by student id.
std::vector<AttainmentRecord> scope_attainment(const State& state,
                                               const std::string& outcome_code,
                                               const Scope& scope,
                                               double theta);

struct AttainmentRate {
  double rate = 0.0;  // attained / evaluated
  int attained = 0;
  int evaluated = 0;
};

struct ClassAttainment {
  std::string class_id;
  std::string outcome_code;
  double threshold = 0.0;
  AttainmentRate rate;
  std::vector<AttainmentRecord> records;  // evaluated students, by id
  std::vector<std::string> no_evidence;   // roster students without evidence
};

// Errc::NoEvaluatedStudents when no roster student has evidence.
ClassAttainment class_attainment_rate(const State& state,
                                      const std::string& class_id,
                                      const std::string& outcome_code,
                                      double theta);

struct BandCount {
  std::string label;
  int count = 0;
};

struct Distribution {
  Scope scope;
  std::string outcome_code;
  std::vector<BandCount> bands;  // scheme order, zero counts kept
  int total = 0;
};

// Band counts of the attainment scores of every evaluated student in scope
// (the pie-chart payload). Errc::NoEvaluatedStudents when there are none.
Distribution distribution(const State& state, const Scope& scope,
                          const std::string& outcome_code,
                          const BandScheme& scheme, double theta);

// Same as distribution() over precomputed records.
Distribution bucket(const std::vector<AttainmentRecord>& records,
                    const Scope& scope, const std::string& outcome_code,
                    const BandScheme& scheme);

// Zero counts for every band.
Distribution empty_distribution(const Scope& scope,
                                const std::string& outcome_code,
                                const BandScheme& scheme);

struct RollupEntry {
  std::string outcome_code;
  bool no_evidence = false;
  AttainmentRate rate;
  std::optional<Distribution> distribution;
};

struct ProgramRollup {
  std::string curriculum_version;
  std::string term_from;
  std::string term_to;
  double threshold = 0.0;
  std::vector<std::string> classes;  // in scope, by id
  std::vector<RollupEntry> outcomes; // by outcome code
};

// Pools one record per (student, class) over every class whose term lies in
// [term_from, term_to] (label order) for each outcome of the curriculum
// version. Errc::EmptyScope when no class falls in the range.
ProgramRollup program_rollup(const State& state,
                             const std::string& curriculum_version,
                             const std::string& term_from,
                             const std::string& term_to, double theta,
                             const BandScheme& scheme);

struct SkillSummaryRow {
  std::string skill_id;
  std::string skill_name;
  double mean = 0.0;  // of effective ratings, 2 places
  int count = 0;
};

// By skill name. Requires ViewClassAnalytics on the class.
std::vector<SkillSummaryRow> skills_summary(const State& state,
                                            const Actor& actor,
                                            const std::string& class_id);

struct TrendPoint {
  std::string term;
  std::optional<AttainmentRate> rate;  // nullopt: no evidence that term
};

// Pooled (student, class) attainment rate per term, in the given order.
// Errc::UnknownOutcome when the code is not in the curriculum version.
std::vector<TrendPoint> term_trend(const State& state,
                                   const std::string& outcome_code,
                                   const std::string& curriculum_version,
                                   const std::vector<std::string>& terms,
                                   double theta);

struct StudentOutcomeView {
  AttainmentRecord record;
  std::string band;
};

// A student's attainment on every outcome they have evidence for, across all
// classes, with band labels (the self-view feedback).
std::vector<StudentOutcomeView> student_attainment_view(
    const State& state, const std::string& student_id, double theta,
    const BandScheme& scheme);

// Distinct outcome codes referenced by any rubric mapping, sorted.
std::vector<std::string> mapped_outcome_codes(const State& state);

}  // namespace gradelens
