#pragma once

#include <memory>
#include <string>
#include <utility>

#include "gradelens/api/service.hpp"

namespace gradelens::api {

// "host:port" -> (host, port). Errc::ValidationError when malformed.
std::pair<std::string, int> split_listen_address(const std::string& address);

// Thread-pooled HTTP front end for an ApiService.
class HttpServer {
 public:
  explicit HttpServer(const ApiService& api);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Port 0 picks a free port. Returns the bound port; Errc::IoFailure when
  // the address is taken.
  int bind(const std::string& host, int port);
  void listen();  // blocks until stop()
  void start();   // listen() on a background thread
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace gradelens::api
