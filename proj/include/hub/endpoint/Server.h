#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hub/endpoint/Hub.h"

namespace hub::endpoint {

struct SparqlRequest {
  std::string method = "GET";
  std::optional<std::string> query;   // the `query` parameter
  std::optional<std::string> format;  // the `format` parameter
  std::string accept;
  std::string contentType;  // of the body
  std::string body;
};

struct HttpResponse {
  int status = 200;
  std::string body;
  std::string contentType = "text/plain; charset=utf-8";
};

// `route` is a database name or "federated". Errors map to 400 (parse
// errors, unsupported features, missing query), 404 (unknown route), 415
// (unknown format or body type), 500 (backend failure) and 502 (a SERVICE
// endpoint failed).
HttpResponse handleSparql(const Hub& hub, std::string_view route, const SparqlRequest& request);

// HTTP front end over a Hub:
//   GET|POST /sparql/<db>, /sparql/federated
//   GET /cat, /cat-rdf
//   static files under / when the config names a static_dir
class Server {
 public:
  explicit Server(const Hub& hub);
  ~Server();

  std::vector<std::string> routes() const;
  // Port 0 picks a free port. Throws ConfigError naming the address.
  void bind(const std::string& host, int port);
  int port() const;
  // Blocks until stop().
  void run();
  void stop();
  // Called once per request with "METHOD path status".
  void setLogger(std::function<void(const std::string&)> logger);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace hub::endpoint
