#pragma once

#include <gtest/gtest.h>

#include <atomic>
#include <filesystem>
#include <random>
#include <memory>
#include <string>

#include "gradelens/domain.hpp"
#include "gradelens/error.hpp"
#include "gradelens/store.hpp"

namespace gradelens::testing {

// Fewer PBKDF2 rounds keep account setup fast in tests.
inline constexpr int kTestIterations = 1000;

#define EXPECT_ERRC(stmt, errc)                                        \
  do {                                                                 \
    try {                                                              \
      stmt;                                                            \
      ADD_FAILURE() << "expected " << ::gradelens::machine_code(errc); \
    } catch (const ::gradelens::Error& e) {                            \
      EXPECT_EQ(::gradelens::machine_code(e.code()),                   \
                ::gradelens::machine_code(errc))                       \
          << e.what();                                                 \
    }                                                                  \
  } while (0)

// A fresh directory under the system temp dir, removed on destruction.
struct TempDir {
  std::filesystem::path path;

  TempDir() {
    std::random_device rd;
    path = std::filesystem::temp_directory_path() /
           ("gradelens-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
};

// A manually advanced clock shared by the store and session manager.
struct TestClock {
  std::shared_ptr<std::atomic<Timestamp>> now =
      std::make_shared<std::atomic<Timestamp>>(1'700'000'000'000);

  Clock fn() const {
    return [n = now] { return n->load(); };
  }
  void advance_minutes(int minutes) { *now += Timestamp{minutes} * 60'000; }
};

// Head, two instructors, a handful of students, one outcome, one course and
// one class taught by the first instructor.
struct World {
  TestClock clock;
  std::unique_ptr<Store> store;
  Actor head, reyes, santos;
  std::vector<std::string> students;
  std::string class_id;

  explicit World(int student_count = 4) {
    StoreOptions options;
    options.clock = clock.fn();
    store = Store::in_memory(options);
    const auto admin = store->transact([](Transaction& tx) {
      return bootstrap_admin(tx, "Head", "head-password", kTestIterations);
    });
    head = {admin.user_id, Role::DepartmentHead};
    reyes = add_user("Reyes", Role::Instructor);
    santos = add_user("Santos", Role::Instructor);
    for (int i = 0; i < student_count; ++i) {
      students.push_back(add_user("Student " + std::to_string(i), Role::Student).user_id);
    }
    store->transact([&](Transaction& tx) {
      upsert_program_outcome(tx, head, "PO-A", "apply knowledge of computing", "2023");
      upsert_program_outcome(tx, head, "PO-B", "communicate effectively", "2023");
      create_course(tx, head, "CS101", "Programming 1", 3.0);
    });
    class_id = store->transact([&](Transaction& tx) {
      return create_class_section(tx, head, "CS101", "2024-1", reyes.user_id)
          .class_id;
    });
  }

  Actor add_user(const std::string& name, Role role,
                 const std::string& password = "password-123") {
    const auto u = store->transact([&](Transaction& tx) {
      return create_user(tx, head, name, role, password, "", kTestIterations);
    });
    return {u.user_id, role};
  }

  void enroll_all() {
    for (const auto& s : students) {
      store->transact([&](Transaction& tx) { enroll_student(tx, reyes, class_id, s); });
    }
  }

  std::shared_ptr<const State> snap() const { return store->snapshot(); }
};

}  // namespace gradelens::testing
