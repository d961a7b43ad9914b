#include "gradelens/scope.hpp"

#include "gradelens/error.hpp"
#include "gradelens/state.hpp"

namespace gradelens {

Scope Scope::parse(std::string_view text) {
  if (text == "all") return all();
  const auto colon = text.find(':');
  if (colon != std::string_view::npos && colon + 1 < text.size()) {
    const auto kind = text.substr(0, colon);
    std::string value(text.substr(colon + 1));
    if (kind == "class") return of_class(std::move(value));
    if (kind == "term") return of_term(std::move(value));
  }
  fail(Errc::ValidationError, "scope must be 'all', 'class:<id>' or "
                              "'term:<label>', got '" + std::string(text) + "'");
}

std::string Scope::to_string() const {
  switch (kind) {
    case Kind::All: return "all";
    case Kind::Class: return "class:" + value;
    case Kind::Term: return "term:" + value;
  }
  return "all";
}

bool Scope::contains(const State& state, const EvaluationRecord& ev) const {
  switch (kind) {
    case Kind::All:
      return true;
    case Kind::Class:
      return ev.class_id == value;
    case Kind::Term: {
      const auto* cls = state.find_class(ev.class_id);
      return cls != nullptr && cls->term == value;
    }
  }
  return false;
}

}  // namespace gradelens
