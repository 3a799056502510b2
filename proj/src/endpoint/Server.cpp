#include "hub/endpoint/Server.h"

#include <algorithm>
#include <cctype>

#include "httplib.h"

#include "hub/federation/Federation.h"
#include "hub/rdf/NTriples.h"
#include "hub/sparql/Parser.h"

namespace hub::endpoint {

namespace {

HttpResponse text(int status, std::string message) {
  if (message.empty() || message.back() != '\n') message += '\n';
  return {status, std::move(message), "text/plain; charset=utf-8"};
}

std::string mediaTypeOf(std::string_view contentType) {
  std::string type(contentType.substr(0, contentType.find(';')));
  type.erase(std::remove_if(type.begin(), type.end(),
                            [](unsigned char c) { return std::isspace(c); }),
             type.end());
  std::transform(type.begin(), type.end(), type.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return type;
}

}  // namespace

HttpResponse handleSparql(const Hub& hub, std::string_view route, const SparqlRequest& request) {
  const bool federated = route == "federated";
  const rewriter::Context* ctx = federated ? nullptr : hub.databaseContext(route);
  if (!federated && !ctx) return text(404, "unknown endpoint /sparql/" + std::string(route));

  std::optional<std::string> query = request.query;
  if (request.method == "POST") {
    const std::string type = mediaTypeOf(request.contentType);
    if (type == "application/sparql-query") {
      query = request.body;
    } else if (type != "application/x-www-form-urlencoded" && !query) {
      return text(415, "unsupported request body type '" + request.contentType + "'");
    }
  }
  if (!query || query->empty()) return text(400, "missing query");

  ResultFormat format = hub.config().defaultFormat;
  if (request.format) {
    auto f = parseFormat(*request.format);
    if (!f) return text(415, UnknownFormatError(*request.format).what());
    format = *f;
  } else if (auto f = negotiate(request.accept)) {
    format = *f;
  }

  rewriter::SolutionTable table;
  try {
    const auto ast = sparql::parseQuery(*query);
    table = federated ? federation::evaluateFederated(ast, hub.registry(), hub.policy())
                      : rewriter::evaluateQuery(ast, *ctx);
  } catch (const sparql::ParseError& e) {
    return text(400, e.what());
  } catch (const federation::ServiceError& e) {
    return text(502, e.what());
  } catch (const Error& e) {
    return text(500, e.what());
  }
  auto out = formatResults(table, format);
  return {200, std::move(out.body), std::move(out.mediaType)};
}

struct Server::Impl {
  const Hub& hub;
  httplib::Server http;
  int port = 0;
  std::function<void(const std::string&)> logger;

  explicit Impl(const Hub& h) : hub(h) {}
};

Server::Server(const Hub& hub) : impl_(std::make_unique<Impl>(hub)) {
  auto& http = impl_->http;
  const Hub* h = &hub;

  // httplib defaults to SO_REUSEPORT, which lets a second hub share a port
  // that is already taken.
  http.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
  });

  auto sparql = [h](const httplib::Request& req, httplib::Response& res) {
    SparqlRequest r;
    r.method = req.method;
    if (req.has_param("query")) r.query = req.get_param_value("query");
    if (req.has_param("format")) r.format = req.get_param_value("format");
    r.accept = req.get_header_value("Accept");
    r.contentType = req.get_header_value("Content-Type");
    r.body = req.body;
    auto out = handleSparql(*h, req.matches[1].str(), r);
    res.status = out.status;
    res.set_content(out.body, out.contentType);
  };
  http.Get(R"(/sparql/([^/]+))", sparql);
  http.Post(R"(/sparql/([^/]+))", sparql);

  const std::string catalogue = toJson(hub.catalogue());
  http.Get("/cat", [catalogue](const httplib::Request&, httplib::Response& res) {
    res.set_content(catalogue, std::string(kCatalogueMediaType));
  });
  const std::string catalogueRdf = rdf::serializeNTriples(hub.catalogueRdf());
  http.Get("/cat-rdf", [catalogueRdf](const httplib::Request&, httplib::Response& res) {
    res.set_content(catalogueRdf, "application/n-triples");
  });

  if (!hub.config().staticDir.empty()) {
    if (!http.set_mount_point("/", hub.config().staticDir.string())) {
      throw ConfigError("static_dir " + hub.config().staticDir.string() + " is not a directory");
    }
  } else {
    const std::string index = [this] {
      std::string s = "SPARQL data hub\n";
      for (const auto& r : routes()) s += "  " + r + "\n";
      return s;
    }();
    http.Get("/", [index](const httplib::Request&, httplib::Response& res) {
      res.set_content(index, "text/plain; charset=utf-8");
    });
  }

  http.set_logger([this](const httplib::Request& req, const httplib::Response& res) {
    if (impl_->logger) impl_->logger(req.method + " " + req.path + " " + std::to_string(res.status));
  });
}

Server::~Server() { stop(); }

std::vector<std::string> Server::routes() const {
  std::vector<std::string> out;
  for (const auto& name : impl_->hub.databaseNames()) out.push_back("/sparql/" + name);
  out.push_back("/sparql/federated");
  out.push_back("/cat");
  out.push_back("/cat-rdf");
  if (!impl_->hub.config().staticDir.empty()) out.push_back("/ (static files)");
  return out;
}

void Server::bind(const std::string& host, int port) {
  const std::string address = host + ":" + std::to_string(port);
  if (port == 0) {
    int p = impl_->http.bind_to_any_port(host);
    if (p <= 0) throw ConfigError("cannot listen on " + address);
    impl_->port = p;
  } else {
    if (!impl_->http.bind_to_port(host, port)) throw ConfigError("cannot listen on " + address);
    impl_->port = port;
  }
}

int Server::port() const { return impl_->port; }

void Server::run() { impl_->http.listen_after_bind(); }

void Server::stop() {
  if (impl_->http.is_running()) impl_->http.stop();
}

void Server::setLogger(std::function<void(const std::string&)> logger) {
  impl_->logger = std::move(logger);
}

}  // namespace hub::endpoint
