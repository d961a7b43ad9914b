#include "gradelens/store.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <thread>

#include "checks.hpp"
#include "gradelens/canonical_json.hpp"
#include "gradelens/domain.hpp"
#include "test_util.hpp"

namespace gradelens {
namespace {

using testing::TempDir;

namespace fs = std::filesystem;

StoreOptions fast() {
  StoreOptions o;
  o.sync = false;
  return o;
}

Course course(std::string code) {
  return {std::move(code), "Course", 3.0, false};
}

void put_course(Store& store, const std::string& code) {
  store.commit({store.snapshot()->version, {PutCourse{course(code)}}});
}

std::string image(const Store& store) {
  return canonical_dump(state_to_json(*store.snapshot()));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void spit(const fs::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << bytes;
}

TEST(Store, FreshDirectoryHasDefaults) {
  TempDir dir;
  auto store = Store::open(dir.path / "data", fast());
  EXPECT_EQ(store->commit_count(), 0u);
  EXPECT_EQ(store->snapshot()->settings, Settings{});
  EXPECT_TRUE(store->snapshot()->users.empty());
}

TEST(Store, ReopenReproducesState) {
  TempDir dir;
  std::string before;
  {
    auto store = Store::open(dir.path, fast());
    for (int i = 0; i < 1000; ++i) put_course(*store, "C" + std::to_string(i));
    EXPECT_EQ(store->commit_count(), 1000u);
    before = image(*store);
  }
  auto reopened = Store::open(dir.path, fast());
  EXPECT_EQ(reopened->commit_count(), 1000u);
  EXPECT_EQ(image(*reopened), before);
}

TEST(Store, FailedValidationChangesNothing) {
  TempDir dir;
  auto store = Store::open(dir.path, fast());
  put_course(*store, "CS101");
  const auto before = image(*store);
  const auto journal = slurp(dir.path / "journal.log");
  try {
    store->commit({1, {PutCourse{course("CS102")},
                       EnrollStudent{"c999999", "u999999"}}});
    ADD_FAILURE() << "commit should fail";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ValidationFailed);
    ASSERT_FALSE(e.details().empty());
  }
  EXPECT_EQ(store->commit_count(), 1u);
  EXPECT_EQ(image(*store), before);
  EXPECT_EQ(slurp(dir.path / "journal.log"), journal);
}

TEST(Store, SnapshotsAreIsolated) {
  auto store = Store::in_memory();
  put_course(*store, "A");
  const auto old = store->snapshot();
  const auto again = store->snapshot();
  put_course(*store, "B");
  EXPECT_EQ(old->courses.size(), 1u);
  EXPECT_EQ(canonical_dump(state_to_json(*old)), canonical_dump(state_to_json(*again)));
  EXPECT_EQ(store->snapshot()->courses.size(), 2u);
}

TEST(Store, ConflictingCommitIsRejected) {
  auto store = Store::in_memory();
  put_course(*store, "A");
  const std::uint64_t base = store->snapshot()->version;
  Course edited = course("A");
  edited.title = "First";
  store->commit({base, {PutCourse{edited}}});
  edited.title = "Second";
  EXPECT_ERRC(store->commit({base, {PutCourse{edited}}}), Errc::ConflictDetected);
  EXPECT_EQ(store->snapshot()->courses.at("A").title, "First");
  // Disjoint keys on the same base do not conflict.
  store->commit({base, {PutCourse{course("B")}}});
  EXPECT_EQ(store->commit_count(), 3u);
}

TEST(Store, ConcurrentCommitsAreConserved) {
  TempDir dir;
  auto store = Store::open(dir.path, fast());
  std::string class_id;
  Actor head;
  store->transact([&](Transaction& tx) {
    head = {bootstrap_admin(tx, "Head", "head-password", testing::kTestIterations).user_id,
            Role::DepartmentHead};
  });
  store->transact([&](Transaction& tx) { create_course(tx, head, "CS101", "P1", 3); });
  const auto teacher = store->transact([&](Transaction& tx) {
    return create_user(tx, head, "Reyes", Role::Instructor, "password-123", "",
                       testing::kTestIterations);
  });
  class_id = store->transact([&](Transaction& tx) {
    return create_class_section(tx, head, "CS101", "2024-1", teacher.user_id).class_id;
  });
  std::vector<std::string> students;
  for (int i = 0; i < 100; ++i) {
    students.push_back(store->transact([&](Transaction& tx) {
      return create_user(tx, head, "S" + std::to_string(i), Role::Student,
                         "password-123", "", testing::kTestIterations)
          .user_id;
    }));
  }
  const auto start = store->commit_count();

  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&, t] {
      for (int i = t; i < 100; i += 4) {
        store->transact(
            [&](Transaction& tx) { enroll_student(tx, head, class_id, students[i]); },
            10'000);
      }
    });
  }
  for (auto& th : threads) th.join();

  EXPECT_EQ(store->commit_count(), start + 100);
  EXPECT_EQ(store->snapshot()->classes.at(class_id).roster.size(), 100u);
  const auto before = image(*store);
  store.reset();
  EXPECT_EQ(image(*Store::open(dir.path, fast())), before);
}

TEST(Store, TornTailIsDiscarded) {
  TempDir dir;
  const auto r = testing::check_crash_safety(dir.path, 8);
  EXPECT_TRUE(r.ok()) << r.summary();
}

TEST(Store, BadChecksumRefusesOpen) {
  TempDir dir;
  {
    auto store = Store::open(dir.path, fast());
    put_course(*store, "A");
    put_course(*store, "B");
  }
  auto bytes = slurp(dir.path / "journal.log");
  const std::size_t payload = std::string("GLJOURNAL 1\n").size() + 16 + 3;
  bytes[payload] = bytes[payload] == 'x' ? 'y' : 'x';
  spit(dir.path / "journal.log", bytes);
  EXPECT_ERRC(Store::open(dir.path, fast()), Errc::CorruptJournal);
}

TEST(Store, UnknownJournalVersionRefusesOpen) {
  TempDir dir;
  spit(dir.path / "journal.log", "GLJOURNAL 2\n");
  EXPECT_ERRC(Store::open(dir.path, fast()), Errc::IncompatibleSchemaVersion);
  spit(dir.path / "journal.log", "something else entirely\n");
  EXPECT_ERRC(Store::open(dir.path, fast()), Errc::CorruptJournal);
}

TEST(Store, UnknownSnapshotVersionRefusesOpen) {
  TempDir dir;
  spit(dir.path / "snapshot.json", R"({"schema_version":99,"state":{}})");
  EXPECT_ERRC(Store::open(dir.path, fast()), Errc::IncompatibleSchemaVersion);
}

TEST(Store, CheckpointCompactsJournal) {
  TempDir dir;
  std::string before;
  {
    auto store = Store::open(dir.path, fast());
    for (int i = 0; i < 20; ++i) put_course(*store, "C" + std::to_string(i));
    store->checkpoint();
    EXPECT_EQ(slurp(dir.path / "journal.log"), "GLJOURNAL 1\n");
    put_course(*store, "AFTER");
    before = image(*store);
  }
  auto reopened = Store::open(dir.path, fast());
  EXPECT_EQ(reopened->commit_count(), 21u);
  EXPECT_EQ(image(*reopened), before);
}

TEST(Store, EmptyTransactionDoesNotCommit) {
  auto store = Store::in_memory();
  store->transact([](Transaction&) {});
  EXPECT_EQ(store->commit_count(), 0u);
}

}  // namespace
}  // namespace gradelens
