#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "hub/Error.h"
#include "hub/endpoint/Formats.h"

namespace hub::endpoint {

class ConfigError : public Error {
 public:
  using Error::Error;
};

inline constexpr std::string_view kDefaultHubIri =
    "http://portal.bt-hypercat.com/BT-SPARQL-Endpoint/sparql";

struct DatabaseConfig {
  std::string name;
  std::filesystem::path fixture;
  std::filesystem::path mappings;
};

// A SPARQL endpoint reached over HTTP.
struct RemoteConfig {
  std::string iri;
  std::string url;
};

// An endpoint answered in process from an N-Triples file.
struct GraphConfig {
  std::string iri;
  std::filesystem::path file;
};

// JSON document. Relative paths are resolved against the directory of the
// config file.
//
//   listen            "host:port"
//   ontology          N-Triples file
//   databases[]       {name, fixture, mappings}
//   remotes[]         {iri, url}
//   graphs[]          {iri, file}                     optional
//   default_format    json | xml | csv | tsv | html   optional, json
//   hub_iri           IRI of the all-databases endpoint  optional
//   default_database  target of patterns outside SERVICE  optional, first db
//   static_dir        directory served under /          optional
//   timeout_ms        per remote call                  optional, 10000
//   bind_join         optional, true
struct HubConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::filesystem::path ontology;
  std::vector<DatabaseConfig> databases;
  std::vector<RemoteConfig> remotes;
  std::vector<GraphConfig> graphs;
  ResultFormat defaultFormat = ResultFormat::Json;
  std::string hubIri = std::string(kDefaultHubIri);
  std::string defaultDatabase;
  std::filesystem::path staticDir;
  long timeoutMs = 10000;
  bool bindJoin = true;
};

// Checks the structure only; files are opened when the hub loads.
HubConfig parseConfig(std::string_view json, const std::filesystem::path& baseDir);
HubConfig loadConfig(const std::filesystem::path& path);

// IRI under which a single database is registered for federation.
std::string databaseIri(std::string_view name);

}  // namespace hub::endpoint
