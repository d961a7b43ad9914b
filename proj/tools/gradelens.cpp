// gradelens: command-line front end for the gradebook store and API server.
//
// Exit codes: 0 ok, 2 validation, 3 I/O.

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "gradelens/api/http_server.hpp"
#include "gradelens/api/service.hpp"
#include "gradelens/csv_import.hpp"
#include "gradelens/demo.hpp"
#include "gradelens/domain.hpp"
#include "gradelens/error.hpp"
#include "gradelens/json_io.hpp"
#include "gradelens/reports.hpp"
#include "gradelens/settings.hpp"
#include "gradelens/store.hpp"

namespace gl = gradelens;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

int exit_code_for(gl::Errc code) {
  switch (code) {
    case gl::Errc::IoFailure:
    case gl::Errc::CorruptJournal:
    case gl::Errc::IncompatibleSchemaVersion:
      return kExitIo;
    default:
      return kExitValidation;
  }
}

std::unique_ptr<gl::Store> open_existing(const std::string& dir) {
  if (!std::filesystem::is_directory(dir)) {
    gl::fail(gl::Errc::IoFailure, "no data directory at " + dir);
  }
  return gl::Store::open(dir);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) gl::fail(gl::Errc::IoFailure, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// The CLI operator acts as a department head: the given one, or the first
// active one in the store.
gl::Actor operator_actor(const gl::State& state,
                         const std::optional<std::string>& as) {
  for (const auto& [id, user] : state.users) {
    if (user.role != gl::Role::DepartmentHead || !user.active) continue;
    if (!as || *as == id) return {id, user.role};
  }
  gl::fail(gl::Errc::Forbidden,
           as ? "'" + *as + "' is not an active department head"
              : "no active department head; run init with --admin-name");
}

void print_import(const gl::ImportResult& result, const char* what) {
  std::cout << result.applied << ' ' << what << ", " << result.rejected.size()
            << " rejected\n";
  for (const auto& row : result.rejected) {
    std::cerr << "line " << row.line << ": " << row.reason << '\n';
  }
}

gl::api::HttpServer* g_server = nullptr;

extern "C" void on_signal(int) {
  if (g_server != nullptr) g_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gradebook and student-outcomes analytics"};
  app.require_subcommand(1);

  std::string data_dir = "./data";
  std::optional<std::string> as_user;

  auto* init = app.add_subcommand("init", "Create an empty data directory");
  init->add_option("--data-dir", data_dir, "Data directory")->required();
  std::string admin_name, admin_password;
  init->add_option("--admin-name", admin_name, "Bootstrap department head");
  init->add_option("--admin-password", admin_password);
  std::optional<std::string> init_config;
  init->add_option("--config", init_config, "Initial settings file");

  auto* serve = app.add_subcommand("serve", "Run the HTTP API");
  std::string config_path;
  serve->add_option("--config", config_path, "Settings file")->required();
  std::optional<std::string> serve_dir;
  serve->add_option("--data-dir", serve_dir, "Overrides data_dir");

  auto* import = app.add_subcommand("import", "Import CSV data");
  import->require_subcommand(1);
  std::string class_id, file;
  for (const char* kind : {"roster", "scores"}) {
    auto* sub = import->add_subcommand(kind, std::string("Import a ") + kind + " CSV");
    sub->add_option("--class", class_id, "Class id")->required();
    sub->add_option("--file", file, "CSV file")->required();
    sub->add_option("--data-dir", data_dir, "Data directory");
    sub->add_option("--as", as_user, "Acting department head id");
  }

  auto* exp = app.add_subcommand("export", "Export reports");
  exp->require_subcommand(1);
  auto* exp_analytics = exp->add_subcommand("analytics", "Attainment report");
  std::string scope_text = "all", format_text, out_path;
  std::optional<double> theta;
  exp_analytics->add_option("--scope", scope_text,
                            "all | class:<id> | term:<label>");
  exp_analytics->add_option("--format", format_text, "csv | json")->required();
  exp_analytics->add_option("--out", out_path, "Output file")->required();
  exp_analytics->add_option("--theta", theta, "Attainment threshold");
  exp_analytics->add_option("--data-dir", data_dir, "Data directory");

  auto* seed = app.add_subcommand("seed-demo", "Load the deterministic demo dataset");
  seed->add_option("--data-dir", data_dir, "Data directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*init) {
      std::filesystem::create_directories(data_dir);
      auto store = gl::Store::open(data_dir);
      if (init_config) {
        const auto settings = gl::load_settings_file(*init_config);
        store->transact([&](gl::Transaction& tx) {
          tx.stage(gl::PutSettings{settings});
        });
      }
      if (!admin_name.empty()) {
        const auto admin = store->transact([&](gl::Transaction& tx) {
          return gl::bootstrap_admin(tx, admin_name, admin_password);
        });
        std::cout << "department head " << admin.user_id << '\n';
      }
      std::cout << "initialized " << data_dir << '\n';
      return kExitOk;
    }

    if (*serve) {
      auto settings = gl::load_settings_file(config_path);
      if (serve_dir) settings.data_dir = *serve_dir;
      std::filesystem::create_directories(settings.data_dir);
      auto store = gl::Store::open(settings.data_dir);
      // The store owns settings once they have been changed through the API;
      // the config file only seeds an untouched installation.
      if (store->snapshot()->settings == gl::Settings{}) {
        auto seeded = settings;
        seeded.data_dir = gl::Settings{}.data_dir;
        seeded.listen_address = gl::Settings{}.listen_address;
        if (!(seeded == gl::Settings{})) {
          store->transact([&](gl::Transaction& tx) {
            tx.stage(gl::PutSettings{seeded});
          });
        }
      }
      gl::SessionManager sessions;
      gl::api::ApiService api(*store, sessions);
      gl::api::HttpServer server(api);
      const auto [host, port] = gl::api::split_listen_address(settings.listen_address);
      const int bound = server.bind(host, port);
      std::cout << "listening on " << host << ':' << bound << std::endl;
      g_server = &server;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      server.listen();
      g_server = nullptr;
      return kExitOk;
    }

    if (auto* sub = import->get_subcommands().empty()
                        ? nullptr
                        : import->get_subcommands().front()) {
      auto store = open_existing(data_dir);
      const std::string text = read_file(file);
      const bool roster = sub->get_name() == "roster";
      const auto result = store->transact([&](gl::Transaction& tx) {
        const auto actor = operator_actor(tx.state(), as_user);
        return roster ? gl::import_roster_csv(tx, actor, class_id, text)
                      : gl::import_scores_csv(tx, actor, class_id, text);
      });
      print_import(result, roster ? "enrolled" : "recorded");
      return kExitOk;
    }

    if (*exp_analytics) {
      auto store = open_existing(data_dir);
      const auto snap = store->snapshot();
      const auto scope = gl::Scope::parse(scope_text);
      const auto format = gl::parse_export_format(format_text);
      const double t = theta.value_or(snap->settings.attainment_threshold);
      gl::validate_threshold(t);
      const auto report =
          gl::build_analytics_report(*snap, scope, t, snap->settings.band_scheme);
      const auto bytes = gl::export_report(report, format, out_path);
      std::cout << report.records.size() << " records (" << bytes
                << " bytes) written to " << out_path << '\n';
      return kExitOk;
    }

    if (*seed) {
      std::filesystem::create_directories(data_dir);
      auto store = gl::Store::open(data_dir);
      const auto demo = gl::seed_demo(*store);
      std::cout << "seeded " << demo.student_ids.size() << " students, "
                << demo.class_ids.size() << " classes, "
                << demo.outcome_codes.size() << " outcomes, "
                << demo.rubric_ids.size() << " rubrics into " << data_dir
                << "\nlogin " << demo.head_id << " / " << gl::kDemoHeadPassword
                << '\n';
      return kExitOk;
    }
  } catch (const gl::Error& e) {
    std::cerr << "error: " << gl::machine_code(e.code()) << ": " << e.what()
              << '\n';
    for (const auto& d : e.details()) std::cerr << "  " << d << '\n';
    return exit_code_for(e.code());
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: io_failure: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitValidation;
}
