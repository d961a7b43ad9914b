#include "gradelens/csv_import.hpp"

#include <gtest/gtest.h>

#include "gradelens/gradebook.hpp"
#include "test_util.hpp"

namespace gradelens {
namespace {

using testing::World;

std::string roster_row(int i) {
  char id[16];
  std::snprintf(id, sizeof id, "2024-%04d", i);
  return std::string(id) + ",Last" + std::to_string(i) + ",First" +
         std::to_string(i) + ",s" + std::to_string(i) + "@school.edu\n";
}

TEST(SplitCsvLine, Quoting) {
  std::vector<std::string> f;
  ASSERT_TRUE(split_csv_line(R"(a,"b,c","d ""e""",)", f));
  EXPECT_EQ(f, (std::vector<std::string>{"a", "b,c", "d \"e\"", ""}));
  EXPECT_FALSE(split_csv_line(R"(a,"b)", f));
}

class RosterImportTest : public ::testing::Test {
 protected:
  ImportResult import(const std::string& text) {
    return w.store->transact([&](Transaction& tx) {
      return import_roster_csv(tx, w.reyes, w.class_id, text);
    });
  }
  std::size_t roster_size() const {
    return w.snap()->classes.at(w.class_id).roster.size();
  }

  World w{0};
};

TEST_F(RosterImportTest, ThirtyRows) {
  std::string text(kRosterCsvHeader);
  text += "\n";
  for (int i = 1; i <= 30; ++i) text += roster_row(i);
  const auto r = import(text);
  EXPECT_EQ(r.applied, 30u);
  EXPECT_TRUE(r.rejected.empty());
  EXPECT_EQ(roster_size(), 30u);
  const auto* user = w.snap()->find_user("2024-0007");
  ASSERT_NE(user, nullptr);
  EXPECT_EQ(user->role, Role::Student);
  EXPECT_FALSE(user->active);
  EXPECT_TRUE(user->credential.empty());
  EXPECT_EQ(user->display_name, "First7 Last7");
}

TEST_F(RosterImportTest, DuplicatesAreReportedByLine) {
  std::string text(kRosterCsvHeader);
  text += "\n";
  for (int i = 1; i <= 28; ++i) {
    text += roster_row(i);
    if (i == 10) text += roster_row(3);   // line 12
    if (i == 20) text += roster_row(15);  // line 23
  }
  const auto r = import(text);
  EXPECT_EQ(r.applied, 28u);
  ASSERT_EQ(r.rejected.size(), 2u);
  EXPECT_EQ(r.rejected[0].line, 12u);
  EXPECT_EQ(r.rejected[1].line, 23u);
  EXPECT_NE(r.rejected[0].reason.find("2024-0003"), std::string::npos);
  EXPECT_EQ(roster_size(), 28u);
}

TEST_F(RosterImportTest, BadRowsDoNotBlockGoodOnes) {
  const std::string text = std::string(kRosterCsvHeader) + "\n" + roster_row(1) +
                           "2024-0002,OnlyLast,,\n" + "2024-0003,A,B,not-an-email\n" +
                           "too,few\n" + roster_row(4);
  const auto r = import(text);
  EXPECT_EQ(r.applied, 2u);
  ASSERT_EQ(r.rejected.size(), 3u);
  EXPECT_EQ(r.rejected[0].line, 3u);
  EXPECT_EQ(r.rejected[1].line, 4u);
  EXPECT_EQ(r.rejected[2].line, 5u);
}

TEST_F(RosterImportTest, HeaderAndEmptyFile) {
  EXPECT_ERRC(import("id,last,first,email\n" + roster_row(1)), Errc::BadHeader);
  EXPECT_ERRC(import(""), Errc::EmptyFile);
  EXPECT_EQ(roster_size(), 0u);
  EXPECT_EQ(import(std::string(kRosterCsvHeader) + "\r\n" + roster_row(1)).applied, 1u);
}

TEST_F(RosterImportTest, OtherInstructorIsForbidden) {
  const std::string text = std::string(kRosterCsvHeader) + "\n" + roster_row(1);
  EXPECT_ERRC(w.store->transact([&](Transaction& tx) {
    return import_roster_csv(tx, w.santos, w.class_id, text);
  }),
              Errc::Forbidden);
}

TEST(ScoresImport, RecordsValidRows) {
  World w{3};
  w.enroll_all();
  const auto item = w.store->transact([&](Transaction& tx) {
    const auto comps = define_grade_components(tx, w.reyes, w.class_id, {{"Exam", 1.0}});
    return add_grade_item(tx, w.reyes, w.class_id, comps[0].component_id, "Midterm", 50)
        .item_id;
  });
  const std::string text = std::string(kScoresCsvHeader) + "\n" +
                           w.students[0] + "," + item + ",40\n" +
                           w.students[1] + "," + item + ",abc\n" +
                           w.students[2] + "," + item + ",60\n" +
                           w.students[2] + ",i999999,10\n" +
                           w.students[1] + "," + item + ",45.5\n";
  const auto r = w.store->transact([&](Transaction& tx) {
    return import_scores_csv(tx, w.reyes, w.class_id, text);
  });
  EXPECT_EQ(r.applied, 2u);
  ASSERT_EQ(r.rejected.size(), 3u);
  EXPECT_EQ(r.rejected[0].line, 3u);
  EXPECT_EQ(r.rejected[1].line, 4u);  // above max points
  EXPECT_EQ(r.rejected[2].line, 5u);
  EXPECT_EQ(effective_score(*w.snap(), w.students[0], item), 40.0);
  EXPECT_EQ(effective_score(*w.snap(), w.students[1], item), 45.5);
  EXPECT_FALSE(effective_score(*w.snap(), w.students[2], item).has_value());
}

}  // namespace
}  // namespace gradelens
