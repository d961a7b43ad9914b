#include "cohort.hpp"

#include <algorithm>
#include <set>

namespace gradelens::testing {

namespace {

double uniform(std::mt19937& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int pick(std::mt19937& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

}  // namespace

State random_cohort(std::mt19937& rng, const CohortShape& shape) {
  State s;
  UserAccount head{"u000001", "Head", Role::DepartmentHead, "", true, ""};
  s.users[head.user_id] = head;
  std::vector<std::string> instructors;
  for (int i = 0; i < 2; ++i) {
    UserAccount u{make_id("u", 2 + i), "Instructor " + std::to_string(i),
                  Role::Instructor, "", true, ""};
    instructors.push_back(u.user_id);
    s.users[u.user_id] = u;
  }
  std::vector<std::string> students;
  for (int i = 0; i < shape.students; ++i) {
    UserAccount u{"S" + std::to_string(1000 + i), "Student", Role::Student, "",
                  true, ""};
    students.push_back(u.user_id);
    s.users[u.user_id] = u;
  }
  std::vector<std::string> codes;
  for (int i = 0; i < shape.outcomes; ++i) {
    ProgramOutcome o{"PO-" + std::string(1, static_cast<char>('A' + i)),
                     "attribute", kCohortCurriculum, true};
    codes.push_back(o.outcome_code);
    s.outcomes[{o.outcome_code, o.curriculum_version}] = o;
  }
  s.courses["C1"] = Course{"C1", "Course", 3.0, false};

  for (int c = 0; c < shape.classes; ++c) {
    ClassSection cls;
    cls.class_id = make_id("c", c + 1);
    cls.course_code = "C1";
    cls.term = kCohortTerms[static_cast<std::size_t>(c) % kCohortTerms.size()];
    cls.instructor_id = instructors[static_cast<std::size_t>(c) % 2];
    for (const auto& st : students) {
      if (pick(rng, 0, 3) != 0) cls.roster.insert(st);
    }
    s.classes[cls.class_id] = cls;
  }

  for (int r = 0; r < shape.rubrics; ++r) {
    Rubric rubric;
    rubric.rubric_id = make_id("r", r + 1);
    rubric.title = "Rubric " + std::to_string(r);
    rubric.created_by = instructors[0];
    const int n = pick(rng, 1, 4);
    for (int k = 0; k < n; ++k) {
      Criterion c;
      c.criterion_id = "K" + std::to_string(k + 1);
      c.min_level = pick(rng, 0, 2);
      c.max_level = c.min_level + pick(rng, 1, 5);
      c.weight = uniform(rng, 0.1, 5.0);
      auto shuffled = codes;
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      const int maps = pick(rng, 1, std::min<int>(3, static_cast<int>(codes.size())));
      for (int m = 0; m < maps; ++m) {
        c.mappings.push_back({shuffled[static_cast<std::size_t>(m)],
                              uniform(rng, 0.1, 3.0)});
      }
      rubric.criteria.push_back(std::move(c));
    }
    s.rubrics[rubric.rubric_id] = rubric;
  }

  std::size_t next = 1;
  for (const auto& [class_id, cls] : s.classes) {
    for (const auto& st : cls.roster) {
      const int count = pick(rng, 0, shape.evaluations_per_student);
      for (int e = 0; e < count; ++e) {
        auto it = s.rubrics.begin();
        std::advance(it, pick(rng, 0, static_cast<int>(s.rubrics.size()) - 1));
        EvaluationRecord ev;
        ev.evaluation_id = make_id("e", next++);
        ev.class_id = class_id;
        ev.rubric_id = it->first;
        ev.student_id = st;
        ev.evaluator_id = cls.instructor_id;
        for (const auto& c : it->second.criteria) {
          ev.levels[c.criterion_id] = pick(rng, c.min_level, c.max_level);
        }
        s.evaluations[ev.evaluation_id] = ev;
      }
    }
  }
  return s;
}

std::vector<std::pair<std::string, std::string>> raisable_levels(
    const State& state) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [id, ev] : state.evaluations) {
    const auto& rubric = state.rubrics.at(ev.rubric_id);
    for (const auto& [cid, level] : ev.levels) {
      if (level < rubric.find_criterion(cid)->max_level) out.emplace_back(id, cid);
    }
  }
  return out;
}

BandScheme random_scheme(std::mt19937& rng, double lo, double hi) {
  const int n = pick(rng, 2, 6);
  std::set<double> cuts;
  while (static_cast<int>(cuts.size()) < n - 1) {
    // Two-decimal cut points, like hand-written schemes.
    const double step = (hi - lo) / 100.0;
    cuts.insert(lo + step * pick(rng, 1, 99));
  }
  BandScheme scheme{lo, hi, {}};
  int label = 0;
  for (auto it = cuts.rbegin(); it != cuts.rend(); ++it) {
    scheme.bands.push_back({"band" + std::to_string(label++), *it});
  }
  scheme.bands.push_back({"band" + std::to_string(label), lo});
  return scheme;
}

}  // namespace gradelens::testing
