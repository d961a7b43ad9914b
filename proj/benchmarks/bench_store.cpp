#include <benchmark/benchmark.h>

#include <filesystem>
#include <string>

#include "gradelens/store.hpp"

namespace {

using namespace gradelens;

void commit_courses(benchmark::State& st, Store& store) {
  std::size_t n = 0;
  for (auto _ : st) {
    Course c;
    c.course_code = "C" + std::to_string(n++);
    c.title = "Course";
    c.units = 3;
    store.commit({store.snapshot()->version, {PutCourse{c}}});
  }
  st.SetItemsProcessed(static_cast<std::int64_t>(n));
}

void BM_CommitInMemory(benchmark::State& st) {
  auto store = Store::in_memory();
  commit_courses(st, *store);
}
BENCHMARK(BM_CommitInMemory);

void BM_CommitJournal(benchmark::State& st) {
  const auto dir = std::filesystem::temp_directory_path() / "gradelens-bench-store";
  std::filesystem::remove_all(dir);
  {
    StoreOptions options;
    options.sync = st.range(0) != 0;
    auto store = Store::open(dir, options);
    commit_courses(st, *store);
  }
  std::filesystem::remove_all(dir);
}
BENCHMARK(BM_CommitJournal)->Arg(0)->Arg(1);

}  // namespace

BENCHMARK_MAIN();
