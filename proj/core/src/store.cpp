#include "gradelens/store.hpp"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>
#include <zlib.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <fstream>
#include <sstream>

namespace gradelens {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kMagic = "GLJOURNAL 1\n";
constexpr std::string_view kMagicStem = "GLJOURNAL ";
constexpr std::size_t kHeaderSize = 16;

std::uint32_t crc_of(std::string_view bytes) {
  return static_cast<std::uint32_t>(
      crc32(0L, reinterpret_cast<const Bytef*>(bytes.data()),
            static_cast<uInt>(bytes.size())));
}

[[noreturn]] void io_fail(const std::string& what) {
  fail(Errc::IoFailure, what + ": " + std::strerror(errno));
}

bool parse_hex32(std::string_view text, std::uint32_t& out) {
  out = 0;
  for (char ch : text) {
    out <<= 4;
    if (ch >= '0' && ch <= '9') out |= static_cast<std::uint32_t>(ch - '0');
    else if (ch >= 'a' && ch <= 'f') out |= static_cast<std::uint32_t>(ch - 'a' + 10);
    else return false;
  }
  return true;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) io_fail("cannot read " + p.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_all(int fd, std::string_view bytes, const std::string& what) {
  while (!bytes.empty()) {
    const ssize_t n = ::write(fd, bytes.data(), bytes.size());
    if (n < 0) {
      if (errno == EINTR) continue;
      io_fail(what);
    }
    bytes.remove_prefix(static_cast<std::size_t>(n));
  }
}

void fsync_dir(const fs::path& dir) {
  const int fd = ::open(dir.c_str(), O_RDONLY | O_DIRECTORY);
  if (fd >= 0) {
    ::fsync(fd);
    ::close(fd);
  }
}

}  // namespace

Timestamp system_now() {
  using namespace std::chrono;
  return duration_cast<milliseconds>(system_clock::now().time_since_epoch())
      .count();
}

Store::Store(fs::path dir, StoreOptions options)
    : dir_(std::move(dir)),
      options_(std::move(options)),
      state_(std::make_shared<const State>()) {
  if (!options_.clock) options_.clock = system_now;
}

Store::~Store() {
  if (journal_fd_ >= 0) ::close(journal_fd_);
}

std::unique_ptr<Store> Store::in_memory(StoreOptions options) {
  return std::unique_ptr<Store>(new Store({}, std::move(options)));
}

std::unique_ptr<Store> Store::open(const fs::path& dir, StoreOptions options) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    fail(Errc::IoFailure, "cannot create data directory " + dir.string());
  }
  std::unique_ptr<Store> store(new Store(dir, std::move(options)));
  store->load();
  return store;
}

void Store::load() {
  State state;

  const fs::path snap_path = dir_ / "snapshot.json";
  if (fs::exists(snap_path)) {
    Json doc;
    try {
      doc = Json::parse(read_file(snap_path));
    } catch (const Json::exception& e) {
      fail(Errc::CorruptJournal, "snapshot.json is unreadable: " +
                                     std::string(e.what()));
    }
    const int schema = doc.value("schema_version", -1);
    if (schema != kSchemaVersion) {
      fail(Errc::IncompatibleSchemaVersion,
           "snapshot schema version " + std::to_string(schema) +
               " is not supported");
    }
    try {
      state = state_from_json(doc.at("state"));
    } catch (const Json::exception& e) {
      fail(Errc::CorruptJournal, "snapshot.json is malformed: " +
                                     std::string(e.what()));
    }
  }

  const fs::path journal_path = dir_ / "journal.log";
  std::string bytes = fs::exists(journal_path) ? read_file(journal_path) : "";
  std::size_t good_end = 0;

  if (bytes.size() < kMagic.size() && kMagic.starts_with(bytes)) {
    // Missing, empty, or torn while the header itself was being written.
    bytes.clear();
  } else if (!bytes.starts_with(kMagic)) {
    if (bytes.starts_with(kMagicStem)) {
      const auto eol = bytes.find('\n');
      fail(Errc::IncompatibleSchemaVersion,
           "journal format '" + bytes.substr(0, eol) + "' is not supported");
    }
    fail(Errc::CorruptJournal, "journal.log has no valid header");
  } else {
    std::size_t pos = kMagic.size();
    std::size_t record_no = 0;
    while (pos < bytes.size()) {
      ++record_no;
      const std::string where = "journal record " + std::to_string(record_no) +
                                " at offset " + std::to_string(pos);
      if (bytes.size() - pos < kHeaderSize) break;  // torn header
      std::uint32_t len = 0;
      std::uint32_t crc = 0;
      if (!parse_hex32(std::string_view(bytes).substr(pos, 8), len) ||
          !parse_hex32(std::string_view(bytes).substr(pos + 8, 8), crc)) {
        fail(Errc::CorruptJournal, where + " has a malformed header");
      }
      if (bytes.size() - pos - kHeaderSize < static_cast<std::size_t>(len) + 1) {
        break;  // torn payload
      }
      const std::string_view payload =
          std::string_view(bytes).substr(pos + kHeaderSize, len);
      if (bytes[pos + kHeaderSize + len] != '\n' || crc_of(payload) != crc) {
        fail(Errc::CorruptJournal, where + " fails its checksum");
      }
      try {
        const Json rec = Json::parse(payload);
        const auto seq = rec.at("seq").get<std::uint64_t>();
        if (seq > state.version) {
          if (seq != state.version + 1) {
            fail(Errc::CorruptJournal, where + " is out of sequence");
          }
          for (const auto& ch : rec.at("changes")) {
            apply_change(state, change_from_json(ch), seq);
          }
          state.version = seq;
        }
      } catch (const Json::exception& e) {
        fail(Errc::CorruptJournal, where + " is malformed: " + e.what());
      }
      pos += kHeaderSize + len + 1;
      good_end = pos;
    }
  }

  const int fd = ::open(journal_path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
  if (fd < 0) io_fail("cannot open " + journal_path.string());
  journal_fd_ = fd;
  if (bytes.empty()) {
    if (::ftruncate(fd, 0) != 0) io_fail("cannot reset journal");
    write_all(fd, kMagic, "cannot write journal header");
    good_end = kMagic.size();
    ::fsync(fd);
    fsync_dir(dir_);
  } else if (good_end == 0) {
    good_end = kMagic.size();
  }
  if (good_end < bytes.size()) {
    if (::ftruncate(fd, static_cast<off_t>(good_end)) != 0) {
      io_fail("cannot discard torn journal tail");
    }
    ::fsync(fd);
  }
  if (::lseek(fd, 0, SEEK_END) < 0) io_fail("cannot seek journal");

  state_ = std::make_shared<const State>(std::move(state));
}

std::shared_ptr<const State> Store::snapshot() const {
  std::lock_guard lock(state_mutex_);
  return state_;
}

void Store::append_record(const std::string& payload) {
  if (journal_fd_ < 0) return;
  char header[kHeaderSize + 1];
  std::snprintf(header, sizeof header, "%08x%08x",
                static_cast<unsigned>(payload.size()),
                static_cast<unsigned>(crc_of(payload)));
  std::string record;
  record.reserve(kHeaderSize + payload.size() + 1);
  record.append(header, kHeaderSize).append(payload).push_back('\n');

  const off_t start = ::lseek(journal_fd_, 0, SEEK_END);
  try {
    write_all(journal_fd_, record, "journal append failed");
    if (options_.sync && ::fsync(journal_fd_) != 0) io_fail("journal fsync");
  } catch (...) {
    if (start >= 0 && ::ftruncate(journal_fd_, start) == 0) {
      ::lseek(journal_fd_, start, SEEK_SET);
    }
    throw;
  }
}

std::uint64_t Store::commit(const ChangeSet& cs) {
  std::lock_guard writer(write_mutex_);
  const auto current = snapshot();
  if (cs.changes.empty()) return current->version;

  for (const auto& ch : cs.changes) {
    const auto it = current->key_versions.find(conflict_key(ch));
    if (it != current->key_versions.end() && it->second > cs.base_version) {
      fail(Errc::ConflictDetected,
           "'" + it->first + "' changed since version " +
               std::to_string(cs.base_version) + "; retry");
    }
  }

  const std::uint64_t id = current->version + 1;
  State next = *current;
  Json changes = Json::array();
  for (const auto& ch : cs.changes) {
    try {
      validate_change(next, ch);
    } catch (const Error& e) {
      fail(Errc::ValidationFailed, e.what(),
           {std::string(machine_code(e.code()))});
    }
    apply_change(next, ch, id);
    changes.push_back(change_to_json(ch));
  }
  next.version = id;

  append_record(canonical_dump(Json{{"seq", id}, {"changes", changes}}));

  std::lock_guard lock(state_mutex_);
  state_ = std::make_shared<const State>(std::move(next));
  return id;
}

void Store::checkpoint() {
  if (journal_fd_ < 0) return;
  std::lock_guard writer(write_mutex_);
  const auto current = snapshot();

  const fs::path tmp = dir_ / "snapshot.json.tmp";
  const std::string doc = canonical_dump(
      Json{{"schema_version", kSchemaVersion}, {"state", state_to_json(*current)}});
  const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
  if (fd < 0) io_fail("cannot write " + tmp.string());
  try {
    write_all(fd, doc, "snapshot write failed");
    if (::fsync(fd) != 0) io_fail("snapshot fsync");
  } catch (...) {
    ::close(fd);
    throw;
  }
  ::close(fd);
  std::error_code ec;
  fs::rename(tmp, dir_ / "snapshot.json", ec);
  if (ec) fail(Errc::IoFailure, "cannot publish snapshot: " + ec.message());
  fsync_dir(dir_);

  // Records up to current->version are now redundant; replay skips them even
  // if the truncation below never happens.
  if (::ftruncate(journal_fd_, static_cast<off_t>(kMagic.size())) != 0) {
    io_fail("cannot reset journal");
  }
  ::lseek(journal_fd_, 0, SEEK_END);
  ::fsync(journal_fd_);
}

}  // namespace gradelens
