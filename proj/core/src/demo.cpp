#include "gradelens/demo.hpp"

#include <random>

#include "gradelens/domain.hpp"
#include "gradelens/error.hpp"
#include "gradelens/gradebook.hpp"

namespace gradelens {

namespace {

constexpr const char* kFirstNames[] = {
    "Andrea", "Bea",   "Carlo", "Dana",  "Elias", "Faye",  "Gabriel", "Hana",
    "Ivan",   "Jasmin", "Kiko", "Lara",  "Miguel", "Nina", "Oscar",   "Pia",
    "Quino",  "Rosa",  "Sergio", "Tess", "Ulysses", "Vina", "Wally",  "Xyla",
    "Yuri",   "Zara",  "Arman", "Bianca", "Cesar", "Dolores"};
constexpr const char* kLastNames[] = {"Cruz",   "Reyes",   "Garcia", "Bautista",
                                      "Ocampo", "Mendoza", "Torres", "Aquino",
                                      "Ramos",  "Flores"};

class DemoWriter {
 public:
  explicit DemoWriter(Store& store) : store_(store) {}

  template <typename F>
  auto step(F&& fn) {
    Transaction tx(store_.snapshot(), kDemoEpoch + 60'000 * ++steps_);
    auto result = fn(tx);
    store_.commit(tx.change_set());
    return result;
  }

 private:
  Store& store_;
  int steps_ = 0;
};

int pick(std::mt19937& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint32_t>(hi - lo + 1));
}

}  // namespace

DemoDataset seed_demo(Store& store, std::uint32_t seed) {
  if (!store.snapshot()->users.empty()) {
    fail(Errc::ValidationError, "seed-demo needs an empty store");
  }
  std::mt19937 rng(seed);
  DemoWriter w(store);
  DemoDataset d;
  d.curriculum_version = "2023";
  d.terms = {"2024-1", "2024-2"};

  const auto head = w.step([&](Transaction& tx) {
    return bootstrap_admin(tx, "Department Head", kDemoHeadPassword,
                           kDemoPbkdf2Iterations);
  });
  d.head_id = head.user_id;
  const Actor admin{head.user_id, Role::DepartmentHead};

  w.step([&](Transaction& tx) {
    for (const char* name : {"Reyes", "Santos"}) {
      d.instructor_ids.push_back(
          create_user(tx, admin, name, Role::Instructor, kDemoInstructorPassword,
                      {}, kDemoPbkdf2Iterations)
              .user_id);
    }
    for (int i = 0; i < 30; ++i) {
      UserAccount st;
      st.user_id = "2024-" + std::string(i < 9 ? "000" : "00") + std::to_string(i + 1);
      st.display_name = std::string(kFirstNames[i]) + " " + kLastNames[i % 10];
      st.role = Role::Student;
      st.credential = hash_password(kDemoStudentPassword, kDemoPbkdf2Iterations);
      st.email = "student" + std::to_string(i + 1) + "@example.edu";
      tx.stage(PutUser{st});
      d.student_ids.push_back(st.user_id);
    }
    return 0;
  });

  w.step([&](Transaction& tx) {
    const std::pair<const char*, const char*> outcomes[] = {
        {"PO-A", "Apply knowledge of computing and mathematics"},
        {"PO-B", "Design and implement computing solutions"},
        {"PO-C", "Analyze problems and identify computing requirements"},
        {"PO-D", "Understand professional, ethical and social responsibilities"},
        {"PO-E", "Communicate effectively with a range of audiences"}};
    for (const auto& [code, text] : outcomes) {
      upsert_program_outcome(tx, admin, code, text, d.curriculum_version);
      d.outcome_codes.push_back(code);
    }
    create_course(tx, admin, "CS101", "Programming 1", 3.0);
    create_course(tx, admin, "CS102", "Data Structures", 3.0);
    d.class_ids.push_back(create_class_section(tx, admin, "CS101", d.terms[0],
                                               d.instructor_ids[0])
                              .class_id);
    d.class_ids.push_back(create_class_section(tx, admin, "CS102", d.terms[1],
                                               d.instructor_ids[1])
                              .class_id);
    for (std::size_t i = 0; i < d.student_ids.size(); ++i) {
      enroll_student(tx, admin, d.class_ids[0], d.student_ids[i]);
      if (i < 20) enroll_student(tx, admin, d.class_ids[1], d.student_ids[i]);
    }
    return 0;
  });

  w.step([&](Transaction& tx) {
    auto crit = [](std::string id, std::string desc, int min, int max,
                   double weight, std::vector<OutcomeMapping> maps) {
      Criterion c;
      c.criterion_id = std::move(id);
      c.description = std::move(desc);
      c.min_level = min;
      c.max_level = max;
      c.weight = weight;
      c.mappings = std::move(maps);
      return c;
    };
    d.rubric_ids.push_back(
        define_rubric(tx, admin, "Programming Project",
                      {crit("K1", "Design", 1, 4, 2.0,
                            {{"PO-A", 1.0}, {"PO-B", 0.5}}),
                       crit("K2", "Implementation", 1, 4, 3.0, {{"PO-B", 1.0}}),
                       crit("K3", "Testing", 1, 4, 1.0, {{"PO-C", 1.0}})})
            .rubric_id);
    d.rubric_ids.push_back(
        define_rubric(tx, admin, "Technical Report",
                      {crit("K1", "Analysis", 1, 5, 1.0,
                            {{"PO-C", 1.0}, {"PO-D", 1.0}}),
                       crit("K2", "Communication", 1, 5, 2.0, {{"PO-E", 1.0}}),
                       crit("K3", "Ethics", 1, 5, 1.0,
                            {{"PO-D", 0.5}, {"PO-E", 0.5}})})
            .rubric_id);
    return 0;
  });

  const auto evaluate = [&](Transaction& tx, const Actor& who,
                            const std::string& cls, const std::string& rubric_id,
                            const std::string& student) {
    const auto* rubric = tx.state().find_rubric(rubric_id);
    std::map<std::string, int> levels;
    for (const auto& c : rubric->criteria) {
      levels[c.criterion_id] = pick(rng, c.min_level, c.max_level);
    }
    record_evaluation(tx, who, cls, rubric_id, student, levels);
  };

  const Actor reyes{d.instructor_ids[0], Role::Instructor};
  const Actor santos{d.instructor_ids[1], Role::Instructor};
  w.step([&](Transaction& tx) {
    // The last two students of the first class have no evaluations yet.
    for (std::size_t i = 0; i < 28; ++i) {
      evaluate(tx, reyes, d.class_ids[0], d.rubric_ids[0], d.student_ids[i]);
      if (i < 15) {
        evaluate(tx, reyes, d.class_ids[0], d.rubric_ids[1], d.student_ids[i]);
      }
    }
    for (std::size_t i = 0; i < 18; ++i) {
      evaluate(tx, santos, d.class_ids[1], d.rubric_ids[1], d.student_ids[i]);
      if (i < 10) {
        evaluate(tx, santos, d.class_ids[1], d.rubric_ids[0], d.student_ids[i]);
      }
    }
    return 0;
  });

  for (std::size_t k = 0; k < d.class_ids.size(); ++k) {
    const Actor who = k == 0 ? reyes : santos;
    const auto& cls = d.class_ids[k];
    w.step([&](Transaction& tx) {
      const auto comps = define_grade_components(
          tx, who, cls, {{"Quizzes", 0.4}, {"Exam", 0.6}});
      const auto q1 = add_grade_item(tx, who, cls, comps[0].component_id,
                                     "Quiz 1", 20);
      const auto q2 = add_grade_item(tx, who, cls, comps[0].component_id,
                                     "Quiz 2", 10);
      const auto ex = add_grade_item(tx, who, cls, comps[1].component_id,
                                     "Final Exam", 100);
      const auto& roster = tx.state().find_class(cls)->roster;
      const std::vector<std::string> students(roster.begin(), roster.end());
      for (std::size_t i = 0; i < students.size(); ++i) {
        record_score(tx, who, students[i], q1.item_id, pick(rng, 8, 20));
        record_score(tx, who, students[i], q2.item_id, pick(rng, 4, 10));
        // A couple of students still wait for their exam grade.
        if (i + 2 < students.size()) {
          record_score(tx, who, students[i], ex.item_id, pick(rng, 45, 100));
        }
      }
      return 0;
    });
  }

  w.step([&](Transaction& tx) {
    const auto debugging = create_skill(tx, reyes, "debugging", "CS101");
    const auto solving = create_skill(tx, reyes, "problem solving", "CS101");
    const auto analysis = create_skill(tx, santos, "algorithm analysis", "CS102");
    for (std::size_t i = 0; i < 24; ++i) {
      record_skill_rating(tx, reyes, d.student_ids[i], debugging.skill_id,
                          d.class_ids[0], pick(rng, 50, 100));
      record_skill_rating(tx, reyes, d.student_ids[i], solving.skill_id,
                          d.class_ids[0], pick(rng, 50, 100));
      if (i < 16) {
        record_skill_rating(tx, santos, d.student_ids[i], analysis.skill_id,
                            d.class_ids[1], pick(rng, 50, 100));
      }
    }
    return 0;
  });

  return d;
}

}  // namespace gradelens
