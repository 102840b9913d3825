#include "fcprobe/tools/http_server.hpp"

#include <httplib.h>

#include <filesystem>

namespace fcprobe::tools {

namespace {

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& message) {
  send_json(res, status, {{"error", message}, {"status", status}});
}

template <typename Fn>
void guarded(httplib::Response& res, Fn&& fn) {
  try {
    send_json(res, 200, fn());
  } catch (const ServiceError& e) {
    send_error(res, e.status(), e.what());
  } catch (const RangeError& e) {
    send_error(res, 404, e.what());
  } catch (const json::exception& e) {
    send_error(res, 400, std::string("body: ") + e.what());
  } catch (const Error& e) {
    send_error(res, 400, e.what());
  } catch (const std::exception& e) {
    send_error(res, 500, e.what());
  }
}

json parse_body(const httplib::Request& req) {
  try {
    return json::parse(req.body);
  } catch (const json::parse_error& e) {
    throw ServiceError(400, std::string("body: malformed JSON: ") + e.what());
  }
}

}  // namespace

void register_routes(httplib::Server& server, const ProbeService& service) {
  const auto* svc = &service;
  server.Get("/api/info", [svc](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] { return svc->info(); });
  });
  server.Get("/api/variables", [svc](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] { return svc->variables(); });
  });
  server.Get(R"(/api/variables/([^/]+)/([^/]+)/matrix)", [svc](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const std::string k = req.has_param("downsample") ? req.get_param_value("downsample") : "";
      return svc->matrix(req.matches[1], req.matches[2], k);
    });
  });
  server.Get(R"(/api/variables/([^/]+)/([^/]+)/profile)", [svc](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return svc->profile(req.matches[1], req.matches[2]); });
  });
  server.Post("/api/generate", [svc](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return svc->generate(parse_body(req)); });
  });
  server.Post("/api/sweep", [svc](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return svc->sweep(parse_body(req)); });
  });
  server.Post("/api/correlate", [svc](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return svc->correlate(parse_body(req)); });
  });
}

HttpServer::HttpServer(const ProbeService& service, ServerOptions options)
    : server_(std::make_unique<httplib::Server>()), options_(std::move(options)) {
  register_routes(*server_, service);
  if (!options_.static_dir.empty()) {
    if (!std::filesystem::is_directory(options_.static_dir) || !server_->set_mount_point("/", options_.static_dir)) {
      throw IoError("static directory " + options_.static_dir + " is not readable");
    }
  }
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind() {
  int port = options_.port;
  if (port == 0) {
    port = server_->bind_to_any_port(options_.host);
  } else if (!server_->bind_to_port(options_.host, port)) {
    port = -1;
  }
  if (port < 0) throw IoError("cannot bind " + options_.host + ":" + std::to_string(options_.port));
  return port;
}

void HttpServer::listen() { server_->listen_after_bind(); }

void HttpServer::stop() {
  if (server_ && server_->is_running()) server_->stop();
}

void HttpServer::wait_until_ready() const { server_->wait_until_ready(); }

}  // namespace fcprobe::tools
