#include "gradelens/api/http_server.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <thread>

#include <httplib.h>

#include "gradelens/error.hpp"

namespace gradelens::api {

std::pair<std::string, int> split_listen_address(const std::string& address) {
  const auto colon = address.rfind(':');
  if (colon == std::string::npos || colon == 0) {
    fail(Errc::ValidationError,
         "listen address must be host:port, got '" + address + "'");
  }
  const std::string_view port_text = std::string_view(address).substr(colon + 1);
  int port = -1;
  auto res = std::from_chars(port_text.data(),
                             port_text.data() + port_text.size(), port);
  if (res.ec != std::errc() || res.ptr != port_text.data() + port_text.size() ||
      port < 0 || port > 65535) {
    fail(Errc::ValidationError, "bad port in listen address '" + address + "'");
  }
  return {address.substr(0, colon), port};
}

struct HttpServer::Impl {
  const ApiService& api;
  httplib::Server server;
  std::thread thread;

  explicit Impl(const ApiService& a) : api(a) {
    auto forward = [this](const httplib::Request& req, httplib::Response& res) {
      HttpRequest request;
      request.method = req.method;
      request.path = req.path;
      for (const auto& [k, v] : req.params) request.query.emplace(k, v);
      for (const auto& [k, v] : req.headers) {
        std::string name = k;
        std::transform(name.begin(), name.end(), name.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        request.headers.emplace(std::move(name), v);
      }
      request.body = req.body;
      const HttpResponse response = api.handle(request);
      res.status = response.status;
      res.set_content(response.body, response.content_type.c_str());
    };
    server.Get(".*", forward);
    server.Post(".*", forward);
    server.Put(".*", forward);
    server.Delete(".*", forward);
    server.Patch(".*", forward);
  }
};

HttpServer::HttpServer(const ApiService& api)
    : impl_(std::make_unique<Impl>(api)) {}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  int bound = -1;
  if (port == 0) {
    bound = impl_->server.bind_to_any_port(host);
  } else if (impl_->server.bind_to_port(host, port)) {
    bound = port;
  }
  if (bound <= 0) {
    fail(Errc::IoFailure, "cannot bind " + host + ":" + std::to_string(port));
  }
  return bound;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::start() {
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

void HttpServer::stop() {
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace gradelens::api
