#include "gradelens/csv_import.hpp"

#include <charconv>
#include <cmath>
#include <map>

#include "gradelens/access.hpp"
#include "gradelens/error.hpp"
#include "gradelens/gradebook.hpp"

namespace gradelens {

namespace {

struct Line {
  std::size_t number;
  std::string_view text;
};

std::vector<Line> split_lines(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  std::vector<Line> out;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    if (line.ends_with('\r')) line.remove_suffix(1);
    out.push_back({number, line});
    if (eol == std::string_view::npos) break;
    text.remove_prefix(eol + 1);
  }
  return out;
}

bool blank(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

// Header check shared by both importers. Returns the data lines.
std::vector<Line> data_lines(std::string_view text, std::string_view header) {
  auto lines = split_lines(text);
  while (!lines.empty() && blank(lines.back().text)) lines.pop_back();
  if (lines.empty()) fail(Errc::EmptyFile, "the file is empty");
  std::vector<std::string> fields;
  std::string joined;
  if (split_csv_line(lines.front().text, fields)) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      joined += (i ? "," : "") + trim(fields[i]);
    }
  }
  if (joined != header) {
    fail(Errc::BadHeader, "expected header '" + std::string(header) +
                              "', got '" + std::string(lines.front().text) + "'");
  }
  lines.erase(lines.begin());
  return lines;
}

}  // namespace

bool split_csv_line(std::string_view line, std::vector<std::string>& fields) {
  fields.clear();
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field += ch;
    }
  }
  fields.push_back(std::move(field));
  return !quoted;
}

ImportResult import_roster_csv(Transaction& tx, const Actor& actor,
                               const std::string& class_id,
                               std::string_view text) {
  if (tx.state().find_class(class_id) == nullptr) {
    fail(Errc::UnknownClass, "unknown class '" + class_id + "'");
  }
  require(actor, Action::ManageRoster, Resource::of_class(class_id), tx.state());
  const auto lines = data_lines(text, kRosterCsvHeader);

  ImportResult result;
  std::map<std::string, std::size_t> first_seen;
  std::vector<std::string> fields;
  for (const auto& line : lines) {
    if (blank(line.text)) continue;
    auto reject = [&](std::string reason) {
      result.rejected.push_back({line.number, std::move(reason)});
    };
    if (!split_csv_line(line.text, fields)) {
      reject("unterminated quoted field");
      continue;
    }
    if (fields.size() != 4) {
      reject("expected 4 fields, found " + std::to_string(fields.size()));
      continue;
    }
    const std::string id = trim(fields[0]);
    const std::string last = trim(fields[1]);
    const std::string first = trim(fields[2]);
    const std::string email = trim(fields[3]);
    if (id.empty()) {
      reject("student_id is empty");
      continue;
    }
    if (auto [it, fresh] = first_seen.try_emplace(id, line.number); !fresh) {
      reject("duplicate student_id '" + id + "' (first on line " +
             std::to_string(it->second) + ")");
      continue;
    }
    if (last.empty() || first.empty()) {
      reject("last_name and first_name are required");
      continue;
    }
    if (!email.empty() && email.find('@') == std::string::npos) {
      reject("email '" + email + "' is not an address");
      continue;
    }
    try {
      if (tx.state().find_user(id) == nullptr) {
        UserAccount user;
        user.user_id = id;
        user.display_name = first + " " + last;
        user.role = Role::Student;
        user.active = false;
        user.email = email;
        tx.stage(PutUser{std::move(user)});
      }
      tx.stage(EnrollStudent{class_id, id});
      ++result.applied;
    } catch (const Error& e) {
      reject(e.what());
    }
  }
  return result;
}

ImportResult import_scores_csv(Transaction& tx, const Actor& actor,
                               const std::string& class_id,
                               std::string_view text) {
  if (tx.state().find_class(class_id) == nullptr) {
    fail(Errc::UnknownClass, "unknown class '" + class_id + "'");
  }
  require(actor, Action::ManageGradebook, Resource::of_class(class_id),
          tx.state());
  const auto lines = data_lines(text, kScoresCsvHeader);

  ImportResult result;
  std::vector<std::string> fields;
  for (const auto& line : lines) {
    if (blank(line.text)) continue;
    auto reject = [&](std::string reason) {
      result.rejected.push_back({line.number, std::move(reason)});
    };
    if (!split_csv_line(line.text, fields) || fields.size() != 3) {
      reject("expected 3 fields");
      continue;
    }
    const std::string student = trim(fields[0]);
    const std::string item_id = trim(fields[1]);
    const std::string raw_text = trim(fields[2]);
    double raw = 0.0;
    const auto res =
        std::from_chars(raw_text.data(), raw_text.data() + raw_text.size(), raw);
    if (raw_text.empty() || res.ec != std::errc() ||
        res.ptr != raw_text.data() + raw_text.size() || !std::isfinite(raw)) {
      reject("raw_score '" + raw_text + "' is not a number");
      continue;
    }
    const auto* item = tx.state().find_item(item_id);
    if (item == nullptr || item->class_id != class_id) {
      reject("item '" + item_id + "' is not part of class '" + class_id + "'");
      continue;
    }
    try {
      record_score(tx, actor, student, item_id, raw);
      ++result.applied;
    } catch (const Error& e) {
      reject(e.what());
    }
  }
  return result;
}

}  // namespace gradelens
