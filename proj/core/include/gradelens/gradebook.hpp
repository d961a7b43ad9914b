#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gradelens/bands.hpp"
#include "gradelens/change.hpp"

namespace gradelens {

inline constexpr double kWeightSumTolerance = 1e-9;

// Replaces the class's components. A component whose name already exists
// keeps its id, so its items survive the redefinition. Weights need not sum
// to 1 yet; finalization checks that.
std::vector<GradeComponent> define_grade_components(
    Transaction& tx, const Actor& actor, const std::string& class_id,
    const std::vector<std::pair<std::string, double>>& components);

GradeItem add_grade_item(Transaction& tx, const Actor& actor,
                         const std::string& class_id,
                         const std::string& component_id,
                         const std::string& title, double max_points);

ScoreEntry record_score(Transaction& tx, const Actor& actor,
                        const std::string& student_id,
                        const std::string& item_id, double raw_score);

// Σ weights == 1 within kWeightSumTolerance.
bool weights_finalizable(const std::vector<GradeComponent>& components);

// Latest raw score per (student, item).
std::optional<double> effective_score(const State& state,
                                      const std::string& student_id,
                                      const std::string& item_id);

// Points-pooled: Σ raw / Σ max over the component's items the student has a
// score for. Errc::NoScores when there are none.
double component_score(const State& state, const std::string& student_id,
                       const std::string& component_id);

// 100 × Σ weight·component_score, rounded half-up to 2 places.
// Errc::WeightsNotNormalized, or Errc::IncompleteComponents with the missing
// component names in details().
double final_percent(const State& state, const std::string& student_id,
                     const std::string& class_id);

struct GradeRow {
  std::string student_id;
  double final_percent = 0.0;
  std::string grade;
};

struct IncompleteRow {
  std::string student_id;
  std::vector<std::string> missing_components;
};

struct GradeSummary {
  std::string class_id;
  std::vector<GradeRow> rows;              // by student id
  std::vector<IncompleteRow> incomplete;   // by student id
  std::optional<double> mean;              // of rows, 2 places; absent if none
};

GradeSummary class_grade_summary(const State& state, const Actor& actor,
                                 const std::string& class_id);

}  // namespace gradelens
