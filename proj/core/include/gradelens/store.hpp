#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <type_traits>

#include "gradelens/change.hpp"
#include "gradelens/error.hpp"
#include "gradelens/state.hpp"

namespace gradelens {

using Clock = std::function<Timestamp()>;
Timestamp system_now();

struct StoreOptions {
  bool sync = true;  // fsync every journal append
  Clock clock = system_now;
};

inline constexpr int kSchemaVersion = 1;

// Embedded single-node store: a snapshot file plus an append-only journal of
// change sets. Commits are serialized; readers take immutable snapshots.
//
// Layout under the data directory:
//   snapshot.json  {"schema_version":1,"state":{...}} written by checkpoint()
//   journal.log    "GLJOURNAL 1\n" then records of the form
//                  <len:8 hex><crc32:8 hex><payload:len bytes>\n
//
// A record that runs past the end of the file is a torn write from a crash and
// is discarded on open. A complete record with a bad checksum is corruption
// and refuses the open.
class Store {
 public:
  // Errc::CorruptJournal, IncompatibleSchemaVersion, IoFailure.
  static std::unique_ptr<Store> open(const std::filesystem::path& dir,
                                     StoreOptions options = {});
  // No files; everything else behaves the same.
  static std::unique_ptr<Store> in_memory(StoreOptions options = {});

  ~Store();
  Store(const Store&) = delete;
  Store& operator=(const Store&) = delete;

  std::shared_ptr<const State> snapshot() const;

  // All-or-nothing. Errc::ConflictDetected when another commit touched the
  // same keys after cs.base_version; Errc::ValidationFailed when a change no
  // longer validates (the original machine code is in details()).
  std::uint64_t commit(const ChangeSet& cs);

  // Runs fn against a fresh Transaction and commits what it staged, retrying
  // on ConflictDetected.
  template <typename F>
  auto transact(F&& fn, int max_attempts = 16);

  // Writes snapshot.json and resets the journal.
  void checkpoint();

  std::uint64_t commit_count() const { return snapshot()->version; }
  Timestamp now() const { return options_.clock(); }
  const std::filesystem::path& directory() const { return dir_; }

 private:
  Store(std::filesystem::path dir, StoreOptions options);
  void load();
  void append_record(const std::string& payload);

  std::filesystem::path dir_;
  StoreOptions options_;
  int journal_fd_ = -1;

  mutable std::mutex state_mutex_;
  std::shared_ptr<const State> state_;
  std::mutex write_mutex_;
};

template <typename F>
auto Store::transact(F&& fn, int max_attempts) {
  using Result = std::invoke_result_t<F&, Transaction&>;
  for (int attempt = 1;; ++attempt) {
    Transaction tx(snapshot(), now());
    const auto try_commit = [&] {
      if (tx.empty()) return true;
      try {
        commit(tx.change_set());
      } catch (const Error& e) {
        if (e.code() == Errc::ConflictDetected && attempt < max_attempts) {
          return false;
        }
        throw;
      }
      return true;
    };
    if constexpr (std::is_void_v<Result>) {
      fn(tx);
      if (try_commit()) return;
    } else {
      Result result = fn(tx);
      if (try_commit()) return result;
    }
  }
}

}  // namespace gradelens
