// hubctl: run the data hub and inspect its pieces from the shell.
//
// Exit codes: 0 ok, 1 environment or config, 2 query error, 3 remote failure.

#include <csignal>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <pthread.h>

#include "CLI11.hpp"
#include "httplib.h"

#include "hub/endpoint/Hub.h"
#include "hub/endpoint/Server.h"
#include "hub/mappings/Registry.h"
#include "hub/rdf/NTriples.h"
#include "hub/rewriter/Rewriter.h"
#include "hub/sparql/Parser.h"

namespace {

using namespace hub;
using endpoint::ConfigError;

constexpr int kOk = 0;
constexpr int kEnvironment = 1;
constexpr int kQueryError = 2;
constexpr int kRemoteFailure = 3;

// Exit with a code and a message on stderr.
struct Exit {
  int code;
  std::string message;
};

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Exit{kEnvironment, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct QueryInput {
  std::string text;
  std::string file;

  std::string get() const {
    if (!file.empty()) return file == "-" ? std::string(std::istreambuf_iterator<char>(std::cin), {})
                                          : readFile(file);
    return text;
  }
};

void addQueryOptions(CLI::App* cmd, QueryInput& q) {
  auto* text = cmd->add_option("--query", q.text, "SPARQL query text");
  auto* file = cmd->add_option("--query-file", q.file, "File holding the query, - for stdin");
  text->excludes(file);
  file->excludes(text);
}

// The hub restricted to one database, so a broken sibling does not matter.
std::unique_ptr<endpoint::Hub> loadOne(const std::string& configPath, const std::string& db) {
  auto cfg = endpoint::loadConfig(configPath);
  endpoint::HubConfig one = cfg;
  one.databases.clear();
  one.graphs.clear();
  one.remotes.clear();
  for (const auto& d : cfg.databases) {
    if (d.name == db) one.databases.push_back(d);
  }
  if (one.databases.empty()) throw Exit{kEnvironment, "unknown database '" + db + "'"};
  one.defaultDatabase = db;
  return std::make_unique<endpoint::Hub>(std::move(one));
}

sparql::Query parse(const std::string& text) {
  try {
    return sparql::parseQuery(text);
  } catch (const sparql::ParseError& e) {
    throw Exit{kQueryError, std::string("query error: ") + e.what()};
  }
}

int serve(const std::string& configPath, const std::string& listen) {
  auto cfg = endpoint::loadConfig(configPath);
  if (!listen.empty()) {
    auto colon = listen.rfind(':');
    if (colon == std::string::npos) throw Exit{kEnvironment, "--listen must be host:port"};
    cfg.host = listen.substr(0, colon);
    try {
      cfg.port = std::stoi(listen.substr(colon + 1));
    } catch (const std::exception&) {
      throw Exit{kEnvironment, "--listen must be host:port"};
    }
  }

  // Block the stop signals before any server thread exists; a dedicated
  // thread waits for them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  endpoint::Hub hub(cfg);
  endpoint::Server server(hub);
  server.bind(cfg.host, cfg.port);
  server.setLogger([](const std::string& line) { std::cerr << line << std::endl; });

  std::cerr << "listening on http://" << cfg.host << ":" << server.port() << std::endl;
  for (const auto& route : server.routes()) std::cerr << "  " << route << std::endl;
  for (const auto& iri : hub.registry().iris()) std::cerr << "  SERVICE <" << iri << ">" << std::endl;

  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    std::cerr << "stopping" << std::endl;
    server.stop();
  });
  server.run();
  // run() also returns when the listener fails; wake the waiter either way.
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  return kOk;
}

int ingest(const std::string& configPath, const std::string& db, const std::string& fixture) {
  std::string fixturePath = fixture;
  std::string mappingsPath;
  if (!configPath.empty()) {
    auto cfg = endpoint::loadConfig(configPath);
    bool found = false;
    for (const auto& d : cfg.databases) {
      if (d.name != db) continue;
      found = true;
      if (fixturePath.empty()) fixturePath = d.fixture.string();
      mappingsPath = d.mappings.string();
    }
    if (!found) throw Exit{kEnvironment, "unknown database '" + db + "'"};
  }
  if (fixturePath.empty()) throw Exit{kEnvironment, "nothing to ingest: give --fixture or --config and --db"};

  relstore::Database database;
  relstore::IngestReport report;
  try {
    report = database.loadFixture(readFile(fixturePath));
  } catch (const Error& e) {
    throw Exit{kEnvironment, fixturePath + ": " + e.what()};
  }
  for (const auto& [table, rows] : report.tables) std::cout << table << "\t" << rows << "\n";
  if (!mappingsPath.empty()) {
    try {
      auto registry = mappings::parseMappingDocument(readFile(mappingsPath));
      registry.validate(database);
      std::cout << registry.mappings().size() << " mappings valid\n";
    } catch (const Error& e) {
      throw Exit{kEnvironment, mappingsPath + ": " + e.what()};
    }
  }
  return kOk;
}

int translate(const std::string& configPath, const std::string& db, const QueryInput& input) {
  auto query = parse(input.get());
  if (query.hasService()) throw Exit{kQueryError, "query error: SERVICE cannot be translated to SQL"};
  auto hub = loadOne(configPath, db);
  std::cout << rewriter::explain(query, *hub->databaseContext(db));
  return kOk;
}

int exportDb(const std::string& configPath, const std::string& db, const std::string& out) {
  auto hub = loadOne(configPath, db);
  auto triples = mappings::materializeAll(*hub->mappings(db), *hub->database(db));
  const std::string text = rdf::serializeNTriples(triples);
  if (out.empty() || out == "-") {
    std::cout << text;
    std::cerr << triples.size() << " triples\n";
    return kOk;
  }
  std::ofstream file(out, std::ios::binary | std::ios::trunc);
  if (!file || !(file << text) || !file.flush()) throw Exit{kEnvironment, "cannot write " + out};
  std::cout << triples.size() << " triples written to " << out << "\n";
  return kOk;
}

int query(const std::string& url, const QueryInput& input, const std::string& format, bool post) {
  const std::string text = input.get();
  if (text.empty()) throw Exit{kQueryError, "empty query"};
  auto scheme = url.find("://");
  if (scheme == std::string::npos) throw Exit{kEnvironment, "endpoint must be an http URL"};
  auto slash = url.find('/', scheme + 3);
  const std::string origin = url.substr(0, slash);
  const std::string path = slash == std::string::npos ? "/" : url.substr(slash);

  httplib::Client client(origin);
  client.set_connection_timeout(10);
  client.set_read_timeout(60);
  httplib::Params params{{"format", format}};
  httplib::Result res{nullptr, httplib::Error::Unknown};
  if (post) {
    res = client.Post(httplib::append_query_params(path, params), text, "application/sparql-query");
  } else {
    params.emplace("query", text);
    res = client.Get(path, params, httplib::Headers{});
  }
  if (!res) throw Exit{kRemoteFailure, url + ": " + httplib::to_string(res.error())};
  if (res->status != 200) {
    std::cout << res->body;
    throw Exit{kRemoteFailure, "HTTP " + std::to_string(res->status) + " from " + url};
  }
  std::cout << res->body;
  return kOk;
}

int catalogue(const std::string& configPath, bool rdf) {
  auto cfg = endpoint::loadConfig(configPath);
  cfg.graphs.clear();
  cfg.remotes.clear();
  endpoint::Hub hub(cfg);
  if (rdf) {
    std::cout << rdf::serializeNTriples(hub.catalogueRdf());
  } else {
    std::cout << endpoint::toJson(hub.catalogue()) << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semantic IoT data hub"};
  app.require_subcommand(1);

  std::string config, db, out, fixture, endpointUrl, format = "json", listen;
  bool rdf = false, post = false;
  QueryInput q;

  auto* serveCmd = app.add_subcommand("serve", "Run the HTTP endpoints");
  serveCmd->add_option("--config", config, "Hub config (JSON)")->required();
  serveCmd->add_option("--listen", listen, "host:port, overrides the config");

  auto* ingestCmd = app.add_subcommand("ingest", "Load a fixture and report row counts");
  ingestCmd->add_option("--config", config, "Hub config (JSON)");
  ingestCmd->add_option("--db", db, "Database name from the config");
  ingestCmd->add_option("--fixture", fixture, "Fixture file, overrides the config");

  auto* translateCmd = app.add_subcommand("translate", "Show matched mappings and SQL");
  translateCmd->add_option("--config", config, "Hub config (JSON)")->required();
  translateCmd->add_option("--db", db, "Database name")->required();
  addQueryOptions(translateCmd, q);

  auto* exportCmd = app.add_subcommand("export", "Write a database as N-Triples");
  exportCmd->add_option("--config", config, "Hub config (JSON)")->required();
  exportCmd->add_option("--db", db, "Database name")->required();
  exportCmd->add_option("--out", out, "Output file, - for stdout");

  auto* queryCmd = app.add_subcommand("query", "Send a query to a SPARQL endpoint");
  queryCmd->add_option("--endpoint", endpointUrl, "Endpoint URL")->required();
  queryCmd->add_option("--format", format, "json, xml, csv, tsv or html");
  queryCmd->add_flag("--post", post, "POST the query instead of GET");
  addQueryOptions(queryCmd, q);

  auto* catalogueCmd = app.add_subcommand("catalogue", "Print the Hypercat catalogue");
  catalogueCmd->add_option("--config", config, "Hub config (JSON)")->required();
  catalogueCmd->add_flag("--rdf", rdf, "N-Triples instead of JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kEnvironment;
  }

  try {
    if (*serveCmd) return serve(config, listen);
    if (*ingestCmd) return ingest(config, db, fixture);
    if (*translateCmd) return translate(config, db, q);
    if (*exportCmd) return exportDb(config, db, out);
    if (*queryCmd) return query(endpointUrl, q, format, post);
    if (*catalogueCmd) return catalogue(config, rdf);
  } catch (const Exit& e) {
    std::cerr << e.message << std::endl;
    return e.code;
  } catch (const sparql::ParseError& e) {
    std::cerr << "query error: " << e.what() << std::endl;
    return kQueryError;
  } catch (const Error& e) {
    std::cerr << e.what() << std::endl;
    return kEnvironment;
  } catch (const std::exception& e) {
    std::cerr << e.what() << std::endl;
    return kEnvironment;
  }
  return kEnvironment;
}
