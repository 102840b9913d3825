#pragma once

#include <functional>
#include <memory>
#include <string>

#include "fcprobe/tools/probe_service.hpp"

namespace httplib {
class Server;
}

namespace fcprobe::tools {

struct ServerOptions {
  std::string host = "127.0.0.1";
  // 0 picks a free port.
  int port = 8080;
  // Served at "/" when set.
  std::string static_dir;
};

// Installs the /api routes on an existing server.
void register_routes(httplib::Server& server, const ProbeService& service);

// Owns a configured httplib server bound to one ProbeService.
class HttpServer {
 public:
  HttpServer(const ProbeService& service, ServerOptions options);
  ~HttpServer();

  // Binds the socket and returns the port in use. Throws IoError on failure.
  int bind();
  // Blocks until stop() is called.
  void listen();
  void stop();
  void wait_until_ready() const;

 private:
  std::unique_ptr<httplib::Server> server_;
  ServerOptions options_;
};

}  // namespace fcprobe::tools
