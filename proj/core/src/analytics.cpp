#include "gradelens/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "gradelens/access.hpp"
#include "gradelens/decimal.hpp"
#include "gradelens/domain.hpp"
#include "gradelens/error.hpp"
#include "gradelens/settings.hpp"

namespace gradelens {

namespace {

// Accumulates Σ w·v and Σ w for one (student, outcome, scope).
struct Evidence {
  std::vector<double> values;
  std::vector<double> weights;
};

void collect(const State& state, const EvaluationRecord& ev,
             const std::string& outcome_code, Evidence& out) {
  const auto* rubric = state.find_rubric(ev.rubric_id);
  if (rubric == nullptr) return;
  for (const auto& criterion : rubric->criteria) {
    for (const auto& m : criterion.mappings) {
      if (m.outcome_code != outcome_code) continue;
      const auto level = ev.levels.find(criterion.criterion_id);
      if (level == ev.levels.end()) continue;
      out.values.push_back(normalize_level(level->second, criterion.min_level,
                                           criterion.max_level));
      out.weights.push_back(criterion.weight * m.map_weight);
    }
  }
}

AttainmentRecord make_record(const std::string& student_id,
                             const std::string& outcome_code,
                             const Scope& scope, const Evidence& ev,
                             double theta) {
  AttainmentRecord rec;
  rec.student_id = student_id;
  rec.outcome_code = outcome_code;
  rec.scope = scope;
  rec.score = weighted_mean(ev.values, ev.weights);
  rec.attained = reaches(rec.score, theta);
  rec.evidence_count = static_cast<int>(ev.values.size());
  return rec;
}

AttainmentRate rate_of(const std::vector<AttainmentRecord>& records) {
  AttainmentRate r;
  r.evaluated = static_cast<int>(records.size());
  for (const auto& rec : records) r.attained += rec.attained ? 1 : 0;
  r.rate = r.evaluated == 0
               ? 0.0
               : static_cast<double>(r.attained) / static_cast<double>(r.evaluated);
  return r;
}

// Every evaluation in scope, grouped by student.
std::map<std::string, Evidence> evidence_by_student(
    const State& state, const std::string& outcome_code, const Scope& scope) {
  std::map<std::string, Evidence> out;
  for (const auto& [_, ev] : state.evaluations) {
    if (!scope.contains(state, ev)) continue;
    Evidence& bucket = out[ev.student_id];
    collect(state, ev, outcome_code, bucket);
  }
  return out;
}

// One record per (student, class) for the given classes.
std::vector<AttainmentRecord> pooled_records(
    const State& state, const std::vector<std::string>& class_ids,
    const std::string& outcome_code, double theta) {
  std::vector<AttainmentRecord> out;
  for (const auto& id : class_ids) {
    for (auto& rec :
         scope_attainment(state, outcome_code, Scope::of_class(id), theta)) {
      out.push_back(std::move(rec));
    }
  }
  return out;
}

}  // namespace

double normalize_level(int level, int min_level, int max_level) {
  if (max_level <= min_level) {
    fail(Errc::DegenerateRange, "level range [" + std::to_string(min_level) +
                                    ", " + std::to_string(max_level) +
                                    "] is degenerate");
  }
  if (level < min_level || level > max_level) {
    fail(Errc::OutOfRange, "level " + std::to_string(level) + " outside [" +
                               std::to_string(min_level) + ", " +
                               std::to_string(max_level) + "]");
  }
  return static_cast<double>(level - min_level) /
         static_cast<double>(max_level - min_level);
}

double weighted_mean(std::span<const double> values,
                     std::span<const double> weights) {
  if (values.empty() || values.size() != weights.size()) {
    fail(Errc::EmptyInput, "weighted mean needs equal-length, non-empty inputs");
  }
  double num = 0.0;
  double den = 0.0;
  double lo = values[0];
  double hi = values[0];
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i])) {
      fail(Errc::NonPositiveWeight, "weights must be positive");
    }
    num += weights[i] * values[i];
    den += weights[i];
    lo = std::min(lo, values[i]);
    hi = std::max(hi, values[i]);
  }
  return std::clamp(num / den, lo, hi);
}

AttainmentRecord student_outcome_attainment(const State& state,
                                            const std::string& student_id,
                                            const std::string& outcome_code,
                                            const Scope& scope, double theta) {
  validate_threshold(theta);
  Evidence ev;
  for (const auto& [_, rec] : state.evaluations) {
    if (rec.student_id == student_id && scope.contains(state, rec)) {
      collect(state, rec, outcome_code, ev);
    }
  }
  if (ev.values.empty()) {
    fail(Errc::NoEvidence, "no evidence for '" + student_id + "' on '" +
                               outcome_code + "' in " + scope.to_string());
  }
  return make_record(student_id, outcome_code, scope, ev, theta);
}

std::vector<AttainmentRecord> scope_attainment(const State& state,
                                               const std::string& outcome_code,
                                               const Scope& scope,
                                               double theta) {
  validate_threshold(theta);
  std::vector<AttainmentRecord> out;
  for (const auto& [student, ev] :
       evidence_by_student(state, outcome_code, scope)) {
    if (ev.values.empty()) continue;
    out.push_back(make_record(student, outcome_code, scope, ev, theta));
  }
  return out;
}

ClassAttainment class_attainment_rate(const State& state,
                                      const std::string& class_id,
                                      const std::string& outcome_code,
                                      double theta) {
  const auto* cls = state.find_class(class_id);
  if (cls == nullptr) fail(Errc::UnknownClass, "unknown class '" + class_id + "'");
  ClassAttainment out;
  out.class_id = class_id;
  out.outcome_code = outcome_code;
  out.threshold = theta;
  out.records =
      scope_attainment(state, outcome_code, Scope::of_class(class_id), theta);
  std::set<std::string> evaluated;
  for (const auto& rec : out.records) evaluated.insert(rec.student_id);
  for (const auto& student : cls->roster) {
    if (!evaluated.contains(student)) out.no_evidence.push_back(student);
  }
  if (out.records.empty()) {
    fail(Errc::NoEvaluatedStudents, "no student in '" + class_id +
                                        "' has evidence for '" + outcome_code +
                                        "'");
  }
  out.rate = rate_of(out.records);
  return out;
}

Distribution empty_distribution(const Scope& scope,
                                const std::string& outcome_code,
                                const BandScheme& scheme) {
  Distribution d;
  d.scope = scope;
  d.outcome_code = outcome_code;
  for (const auto& b : scheme.bands) d.bands.push_back({b.label, 0});
  return d;
}

Distribution bucket(const std::vector<AttainmentRecord>& records,
                    const Scope& scope, const std::string& outcome_code,
                    const BandScheme& scheme) {
  scheme.validate();
  Distribution d = empty_distribution(scope, outcome_code, scheme);
  for (const auto& rec : records) {
    ++d.bands[band_index(rec.score, scheme)].count;
    ++d.total;
  }
  return d;
}

Distribution distribution(const State& state, const Scope& scope,
                          const std::string& outcome_code,
                          const BandScheme& scheme, double theta) {
  const auto records = scope_attainment(state, outcome_code, scope, theta);
  if (records.empty()) {
    fail(Errc::NoEvaluatedStudents,
         "no evaluated students for '" + outcome_code + "' in " +
             scope.to_string());
  }
  return bucket(records, scope, outcome_code, scheme);
}

ProgramRollup program_rollup(const State& state,
                             const std::string& curriculum_version,
                             const std::string& term_from,
                             const std::string& term_to, double theta,
                             const BandScheme& scheme) {
  validate_threshold(theta);
  ProgramRollup out;
  out.curriculum_version = curriculum_version;
  out.term_from = term_from;
  out.term_to = term_to;
  out.threshold = theta;
  for (const auto& [id, cls] : state.classes) {
    if (cls.term >= term_from && cls.term <= term_to) out.classes.push_back(id);
  }
  if (out.classes.empty()) {
    fail(Errc::EmptyScope, "no classes between terms '" + term_from +
                               "' and '" + term_to + "'");
  }
  for (const auto& outcome : list_outcomes(state, curriculum_version)) {
    RollupEntry entry;
    entry.outcome_code = outcome.outcome_code;
    const auto records =
        pooled_records(state, out.classes, outcome.outcome_code, theta);
    if (records.empty()) {
      entry.no_evidence = true;
    } else {
      entry.rate = rate_of(records);
      entry.distribution = bucket(records, Scope::all(), outcome.outcome_code,
                                  scheme);
    }
    out.outcomes.push_back(std::move(entry));
  }
  return out;
}

std::vector<SkillSummaryRow> skills_summary(const State& state,
                                            const Actor& actor,
                                            const std::string& class_id) {
  if (state.find_class(class_id) == nullptr) {
    fail(Errc::UnknownClass, "unknown class '" + class_id + "'");
  }
  require(actor, Action::ViewClassAnalytics, Resource::of_class(class_id),
          state);
  std::map<std::string, std::pair<double, int>> acc;
  for (const auto& r : effective_skill_ratings(state)) {
    if (r.class_id != class_id) continue;
    auto& [sum, n] = acc[r.skill_id];
    sum += r.score;
    ++n;
  }
  std::vector<SkillSummaryRow> out;
  for (const auto& [skill_id, totals] : acc) {
    const auto* skill = state.find_skill(skill_id);
    out.push_back({skill_id, skill ? skill->name : skill_id,
                   round_half_up(totals.first / totals.second, 2),
                   totals.second});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.skill_name < b.skill_name;
  });
  return out;
}

std::vector<TrendPoint> term_trend(const State& state,
                                   const std::string& outcome_code,
                                   const std::string& curriculum_version,
                                   const std::vector<std::string>& terms,
                                   double theta) {
  validate_threshold(theta);
  if (!state.outcomes.contains({outcome_code, curriculum_version})) {
    fail(Errc::UnknownOutcome, "outcome '" + outcome_code +
                                   "' is not part of curriculum '" +
                                   curriculum_version + "'");
  }
  std::vector<TrendPoint> out;
  for (const auto& term : terms) {
    std::vector<std::string> ids;
    for (const auto& [id, cls] : state.classes) {
      if (cls.term == term) ids.push_back(id);
    }
    const auto records = pooled_records(state, ids, outcome_code, theta);
    TrendPoint point{term, std::nullopt};
    if (!records.empty()) point.rate = rate_of(records);
    out.push_back(std::move(point));
  }
  return out;
}

std::vector<StudentOutcomeView> student_attainment_view(
    const State& state, const std::string& student_id, double theta,
    const BandScheme& scheme) {
  std::vector<StudentOutcomeView> out;
  for (const auto& code : mapped_outcome_codes(state)) {
    try {
      auto rec = student_outcome_attainment(state, student_id, code,
                                            Scope::all(), theta);
      std::string band = band_of(rec.score, scheme);
      out.push_back({std::move(rec), std::move(band)});
    } catch (const Error& e) {
      if (e.code() != Errc::NoEvidence) throw;
    }
  }
  return out;
}

std::vector<std::string> mapped_outcome_codes(const State& state) {
  std::set<std::string> codes;
  for (const auto& [_, rubric] : state.rubrics) {
    for (const auto& c : rubric.criteria) {
      for (const auto& m : c.mappings) codes.insert(m.outcome_code);
    }
  }
  return {codes.begin(), codes.end()};
}

}  // namespace gradelens
