#pragma once

#include <string>
#include <string_view>

namespace gradelens {

struct State;
struct EvaluationRecord;

// Which evaluations an analytics query looks at.
struct Scope {
  enum class Kind { All, Class, Term };

  Kind kind = Kind::All;
  std::string value;  // class id or term label

  static Scope all() { return {}; }
  static Scope of_class(std::string class_id) {
    return {Kind::Class, std::move(class_id)};
  }
  static Scope of_term(std::string term) { return {Kind::Term, std::move(term)}; }

  // "all", "class:<id>" or "term:<label>". Errc::ValidationError otherwise.
  static Scope parse(std::string_view text);
  std::string to_string() const;

  bool contains(const State& state, const EvaluationRecord& ev) const;
  bool operator==(const Scope&) const = default;
};

}  // namespace gradelens
