#include "gradelens/gradebook.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "gradelens/access.hpp"
#include "gradelens/decimal.hpp"
#include "gradelens/error.hpp"

namespace gradelens {

namespace {

const ClassSection& class_or_fail(const State& s, const std::string& id) {
  const auto* cls = s.find_class(id);
  if (cls == nullptr) fail(Errc::UnknownClass, "unknown class '" + id + "'");
  return *cls;
}

const std::vector<GradeComponent>& components_of(const State& s,
                                                 const std::string& class_id) {
  static const std::vector<GradeComponent> kNone;
  auto it = s.grade_components.find(class_id);
  return it == s.grade_components.end() ? kNone : it->second;
}

const GradeComponent* find_component(const State& s,
                                     const std::string& component_id) {
  for (const auto& [_, list] : s.grade_components) {
    for (const auto& gc : list) {
      if (gc.component_id == component_id) return &gc;
    }
  }
  return nullptr;
}

// Latest score per (student, item) for one class, built in one pass.
using ScoreIndex = std::map<std::pair<std::string, std::string>, double>;

ScoreIndex index_scores(const State& s) {
  ScoreIndex out;
  for (const auto& e : s.score_history) out[{e.student_id, e.item_id}] = e.raw_score;
  return out;
}

std::optional<double> pooled(const State& s, const ScoreIndex& scores,
                             const std::string& student_id,
                             const std::string& component_id) {
  double raw = 0.0;
  double max = 0.0;
  bool any = false;
  for (const auto& [id, item] : s.grade_items) {
    if (item.component_id != component_id) continue;
    auto it = scores.find({student_id, id});
    if (it == scores.end()) continue;
    raw += it->second;
    max += item.max_points;
    any = true;
  }
  if (!any) return std::nullopt;
  return std::clamp(raw / max, 0.0, 1.0);
}

double final_from_index(const State& s, const ScoreIndex& scores,
                        const std::string& student_id,
                        const std::string& class_id) {
  const auto& comps = components_of(s, class_id);
  if (!weights_finalizable(comps)) {
    fail(Errc::WeightsNotNormalized,
         "grade component weights of '" + class_id + "' do not sum to 1");
  }
  double total = 0.0;
  std::vector<std::string> missing;
  for (const auto& gc : comps) {
    auto score = pooled(s, scores, student_id, gc.component_id);
    if (!score) {
      missing.push_back(gc.name);
      continue;
    }
    total += gc.weight * *score;
  }
  if (!missing.empty()) {
    std::string names;
    for (const auto& m : missing) names += (names.empty() ? "" : ", ") + m;
    fail(Errc::IncompleteComponents, "no scores yet for: " + names, missing);
  }
  return round_half_up(std::clamp(100.0 * total, 0.0, 100.0), 2);
}

}  // namespace

std::vector<GradeComponent> define_grade_components(
    Transaction& tx, const Actor& actor, const std::string& class_id,
    const std::vector<std::pair<std::string, double>>& components) {
  class_or_fail(tx.state(), class_id);
  require(actor, Action::ManageGradebook, Resource::of_class(class_id),
          tx.state());
  const auto& previous = components_of(tx.state(), class_id);

  std::size_t total_components = 0;
  for (const auto& [_, list] : tx.state().grade_components) {
    total_components += list.size();
  }

  std::vector<GradeComponent> out;
  for (const auto& [name, weight] : components) {
    if (!(std::isfinite(weight) && weight > 0.0)) {
      fail(Errc::ValidationError, "component weight must be positive", {name});
    }
    std::string id;
    for (const auto& gc : previous) {
      if (gc.name == name) id = gc.component_id;
    }
    if (id.empty()) {
      do {
        id = make_id("g", ++total_components);
      } while (find_component(tx.state(), id) != nullptr);
    }
    out.push_back({id, class_id, name, weight});
  }
  tx.stage(SetGradeComponents{class_id, out});
  return out;
}

GradeItem add_grade_item(Transaction& tx, const Actor& actor,
                         const std::string& class_id,
                         const std::string& component_id,
                         const std::string& title, double max_points) {
  class_or_fail(tx.state(), class_id);
  require(actor, Action::ManageGradebook, Resource::of_class(class_id),
          tx.state());
  GradeItem item{State::next_id(tx.state().grade_items, "i"), class_id,
                 component_id, title, max_points};
  tx.stage(PutGradeItem{item});
  return item;
}

ScoreEntry record_score(Transaction& tx, const Actor& actor,
                        const std::string& student_id,
                        const std::string& item_id, double raw_score) {
  const auto* item = tx.state().find_item(item_id);
  if (item == nullptr) fail(Errc::UnknownItem, "unknown item '" + item_id + "'");
  require(actor, Action::ManageGradebook, Resource::of_class(item->class_id),
          tx.state());
  if (!class_or_fail(tx.state(), item->class_id).roster.contains(student_id)) {
    fail(Errc::NotEnrolled, "student '" + student_id + "' is not enrolled");
  }
  if (!(raw_score >= 0.0 && raw_score <= item->max_points)) {
    fail(Errc::OutOfRange, "raw score must lie in [0, " +
                               std::to_string(item->max_points) + "]");
  }
  ScoreEntry entry{student_id, item_id, raw_score, tx.now()};
  tx.stage(AddScore{entry});
  return entry;
}

bool weights_finalizable(const std::vector<GradeComponent>& components) {
  if (components.empty()) return false;
  double sum = 0.0;
  for (const auto& gc : components) sum += gc.weight;
  return std::fabs(sum - 1.0) <= kWeightSumTolerance;
}

std::optional<double> effective_score(const State& state,
                                      const std::string& student_id,
                                      const std::string& item_id) {
  std::optional<double> out;
  for (const auto& e : state.score_history) {
    if (e.student_id == student_id && e.item_id == item_id) out = e.raw_score;
  }
  return out;
}

double component_score(const State& state, const std::string& student_id,
                       const std::string& component_id) {
  if (find_component(state, component_id) == nullptr) {
    fail(Errc::UnknownComponent, "unknown component '" + component_id + "'");
  }
  auto score = pooled(state, index_scores(state), student_id, component_id);
  if (!score) {
    fail(Errc::NoScores, "no scores recorded for '" + student_id + "' in '" +
                             component_id + "'");
  }
  return *score;
}

double final_percent(const State& state, const std::string& student_id,
                     const std::string& class_id) {
  class_or_fail(state, class_id);
  return final_from_index(state, index_scores(state), student_id, class_id);
}

GradeSummary class_grade_summary(const State& state, const Actor& actor,
                                 const std::string& class_id) {
  const auto& cls = class_or_fail(state, class_id);
  require(actor, Action::ViewGradebook, Resource::of_class(class_id), state);
  GradeSummary out;
  out.class_id = class_id;
  if (cls.roster.empty()) return out;
  const auto scores = index_scores(state);

  double sum = 0.0;
  for (const auto& student : cls.roster) {
    try {
      const double pct = final_from_index(state, scores, student, class_id);
      out.rows.push_back(
          {student, pct, transmute_grade(pct, state.settings.grade_scale)});
      sum += pct;
    } catch (const Error& e) {
      if (e.code() != Errc::IncompleteComponents) throw;
      out.incomplete.push_back({student, e.details()});
    }
  }
  if (!out.rows.empty()) {
    out.mean = round_half_up(sum / static_cast<double>(out.rows.size()), 2);
  }
  return out;
}

}  // namespace gradelens
