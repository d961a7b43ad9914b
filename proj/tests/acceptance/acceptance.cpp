// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>

#include "checks.hpp"
#include "gradelens/demo.hpp"
#include "gradelens/store.hpp"

namespace {

using gradelens::testing::CheckResult;
using Clock = std::chrono::steady_clock;

constexpr std::uint32_t kInvariantSeed = 7321;
constexpr int kCrashCommits = 50;

struct Criterion {
  const char* name;
  const char* tolerance;
  double time_limit_ms;  // 0: none
  std::function<CheckResult()> run;
};

bool report(const Criterion& c) {
  const auto start = Clock::now();
  CheckResult r;
  try {
    r = c.run();
  } catch (const std::exception& e) {
    r.fail(std::string("threw: ") + e.what());
  }
  const double ms =
      std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  const bool in_time = c.time_limit_ms <= 0 || ms < c.time_limit_ms;
  const bool pass = r.ok() && in_time;
  std::printf("%s  %-28s %-34s %10.3f ms", pass ? "PASS" : "FAIL", c.name,
              c.tolerance, ms);
  if (c.time_limit_ms > 0) std::printf(" (limit %.0f ms)", c.time_limit_ms);
  std::printf("  %s\n", r.summary().c_str());
  if (!in_time) std::printf("      over time limit\n");
  std::fflush(stdout);
  return pass;
}

CheckResult invariant_suite() {
  namespace t = gradelens::testing;
  using Fn = CheckResult (*)(std::uint32_t, std::size_t);
  const std::pair<const char*, Fn> parts[] = {
      {"weight normalization", t::check_weight_normalization},
      {"ranges", t::check_ranges},
      {"monotonicity", t::check_monotonicity},
      {"map-weight scale invariance", t::check_scale_invariance},
      {"distribution conservation", t::check_distribution_conservation},
      {"band totality and order", t::check_band_totality},
      {"threshold inclusivity", t::check_theta_inclusive},
  };
  CheckResult all;
  for (const auto& [name, fn] : parts) {
    const auto r = fn(kInvariantSeed, t::kPropertyCases);
    std::printf("      %-30s %s\n", name, r.summary().c_str());
    if (r.cases < t::kPropertyCases) all.fail(std::string(name) + ": too few cases");
    all.cases += r.cases;
    for (const auto& f : r.failures) all.fail(std::string(name) + ": " + f);
  }
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  namespace fs = std::filesystem;
  fs::path work = fs::temp_directory_path() / "gradelens-acceptance";
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--work-dir") work = argv[i + 1];
  }
  fs::remove_all(work);
  fs::create_directories(work);

  namespace t = gradelens::testing;
  const Criterion criteria[] = {
      {"survey-overall-mean", "4.43 at 2 places", 1.0, t::check_survey_mean},
      {"survey-interpretations", "exact band labels", 0, t::check_survey_bands},
      {"oracle-equivalence-demo", "abs 1e-9, counts exact", 10'000.0,
       [] {
         auto store = gradelens::Store::in_memory();
         gradelens::seed_demo(*store);
         return t::check_oracle_equivalence(*store->snapshot(),
                                            store->snapshot()->settings.attainment_threshold);
       }},
      {"invariants", ">=1000 cases each", 0, invariant_suite},
      {"crash-safety", "every byte offset, 50 commits", 0,
       [&] { return t::check_crash_safety(work / "crash", kCrashCommits); }},
      {"rbac-matrix", "3 roles x all endpoints", 0, t::check_rbac_matrix},
      {"api-library-equivalence", "byte-identical bodies", 0, t::check_api_equivalence},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    if (!report(c)) ++failed;
  }
  std::printf("%d of %zu criteria passed\n",
              static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
