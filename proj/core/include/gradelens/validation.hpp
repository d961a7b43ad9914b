#pragma once

#include <map>
#include <string>

#include "gradelens/state.hpp"

namespace gradelens {

// Errc::EmptyCriteria, BadLevelRange, UnmappedCriterion, UnknownOutcome or
// ValidationError. The offending criterion id is in Error::details().
void validate_rubric(const State& state, const Rubric& rubric);

// Every rubric criterion has exactly one chosen level inside its range.
void validate_levels(const Rubric& rubric,
                     const std::map<std::string, int>& levels);

}  // namespace gradelens
