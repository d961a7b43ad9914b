#pragma once

// Brute-force reference computations used to check the analytics and
// gradebook modules. Everything here is written from the raw State fields
// with long double accumulation and deliberately shares no code with the
// library's analytics or gradebook sources.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gradelens/bands.hpp"
#include "gradelens/state.hpp"

namespace gradelens::oracle {

constexpr long double kTolerance = 1e-9L;

using EvalFilter = std::function<bool(const EvaluationRecord&)>;

EvalFilter everywhere();
EvalFilter in_class(std::string class_id);
EvalFilter in_term(const State& state, std::string term);

struct Score {
  long double value = 0;
  int evidence = 0;
  bool attained = false;
};

struct Rate {
  int attained = 0;
  int evaluated = 0;
  long double value = 0;
};

// One entry per student with at least one contributing criterion.
std::map<std::string, Score> scores(const State& state,
                                    const std::string& outcome_code,
                                    const EvalFilter& filter, double theta);

Rate rate_of(const std::vector<Score>& scores);
std::vector<Score> values_of(const std::map<std::string, Score>& by_student);

// Count per band, in scheme order.
std::vector<int> band_counts(const std::vector<Score>& scores,
                             const BandScheme& scheme);
// Index of the band a value lands in.
std::size_t band_for(long double value, const BandScheme& scheme);

struct RollupRow {
  std::string outcome_code;
  std::optional<Rate> rate;
  std::vector<int> counts;
};

std::vector<RollupRow> rollup(const State& state, const std::string& version,
                              const std::string& from, const std::string& to,
                              double theta, const BandScheme& scheme);

// Pooled (student, class) rate per term; nullopt when nothing was evaluated.
std::vector<std::optional<Rate>> trend(const State& state,
                                       const std::string& outcome_code,
                                       const std::vector<std::string>& terms,
                                       double theta);

// Final percent for one student before display rounding, or nullopt when a
// component has no score yet. Uses the latest score per item.
std::optional<long double> final_percent(const State& state,
                                         const std::string& class_id,
                                         const std::string& student_id);

}  // namespace gradelens::oracle
