#include "hub/endpoint/Config.h"

#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "json.hpp"

namespace hub::endpoint {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const json& member(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(where + ": missing '" + key + "'");
  return *it;
}

std::string text(const json& obj, const char* key, const std::string& where) {
  const json& v = member(obj, key, where);
  if (!v.is_string() || v.get<std::string>().empty()) {
    throw ConfigError(where + ": '" + key + "' must be a non-empty string");
  }
  return v.get<std::string>();
}

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : (base / path).lexically_normal();
}

const json& array(const json& obj, const char* key) {
  static const json empty = json::array();
  auto it = obj.find(key);
  if (it == obj.end()) return empty;
  if (!it->is_array()) throw ConfigError(std::string("'") + key + "' must be a list");
  return *it;
}

}  // namespace

HubConfig parseConfig(std::string_view text_, const fs::path& baseDir) {
  json doc;
  try {
    doc = json::parse(text_);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  HubConfig cfg;
  static const std::set<std::string> known{"listen",     "ontology",         "databases",
                                           "remotes",    "graphs",           "default_format",
                                           "hub_iri",    "default_database", "static_dir",
                                           "timeout_ms", "bind_join"};
  for (const auto& [key, _] : doc.items()) {
    if (!known.count(key)) throw ConfigError("unknown config key '" + key + "'");
  }

  if (doc.contains("listen")) {
    static const std::regex kListen(R"(^(.+):([0-9]{1,5})$)");
    std::smatch m;
    std::string listen = text(doc, "listen", "config");
    if (!std::regex_match(listen, m, kListen) || std::stoi(m[2].str()) > 65535) {
      throw ConfigError("listen must be host:port, got '" + listen + "'");
    }
    cfg.host = m[1].str();
    cfg.port = std::stoi(m[2].str());
  }
  cfg.ontology = resolve(baseDir, text(doc, "ontology", "config"));

  std::set<std::string> names;
  for (const auto& d : array(doc, "databases")) {
    if (!d.is_object()) throw ConfigError("databases entries must be objects");
    DatabaseConfig db;
    db.name = text(d, "name", "database");
    const std::string where = "database '" + db.name + "'";
    if (!std::regex_match(db.name, std::regex("[A-Za-z0-9_-]+"))) {
      throw ConfigError(where + ": names may use letters, digits, '_' and '-'");
    }
    if (db.name == "federated") throw ConfigError(where + ": the name is reserved");
    if (!names.insert(db.name).second) throw ConfigError(where + " declared twice");
    db.fixture = resolve(baseDir, text(d, "fixture", where));
    db.mappings = resolve(baseDir, text(d, "mappings", where));
    cfg.databases.push_back(std::move(db));
  }

  std::set<std::string> iris;
  for (const auto& r : array(doc, "remotes")) {
    if (!r.is_object()) throw ConfigError("remotes entries must be objects");
    RemoteConfig rc{text(r, "iri", "remote"), text(r, "url", "remote")};
    if (!iris.insert(rc.iri).second) throw ConfigError("endpoint <" + rc.iri + "> declared twice");
    cfg.remotes.push_back(std::move(rc));
  }
  for (const auto& g : array(doc, "graphs")) {
    if (!g.is_object()) throw ConfigError("graphs entries must be objects");
    GraphConfig gc{text(g, "iri", "graph"), {}};
    gc.file = resolve(baseDir, text(g, "file", "graph <" + gc.iri + ">"));
    if (!iris.insert(gc.iri).second) throw ConfigError("endpoint <" + gc.iri + "> declared twice");
    cfg.graphs.push_back(std::move(gc));
  }

  if (doc.contains("default_format")) {
    auto f = parseFormat(text(doc, "default_format", "config"));
    if (!f) throw ConfigError("unknown default_format '" + doc["default_format"].get<std::string>() + "'");
    cfg.defaultFormat = *f;
  }
  if (doc.contains("hub_iri")) cfg.hubIri = text(doc, "hub_iri", "config");
  if (iris.count(cfg.hubIri)) throw ConfigError("endpoint <" + cfg.hubIri + "> declared twice");
  if (doc.contains("default_database")) {
    cfg.defaultDatabase = text(doc, "default_database", "config");
    if (!names.count(cfg.defaultDatabase)) {
      throw ConfigError("default_database '" + cfg.defaultDatabase + "' is not a database");
    }
  } else if (!cfg.databases.empty()) {
    cfg.defaultDatabase = cfg.databases.front().name;
  }
  if (doc.contains("static_dir")) cfg.staticDir = resolve(baseDir, text(doc, "static_dir", "config"));
  if (doc.contains("timeout_ms")) {
    const json& t = doc["timeout_ms"];
    if (!t.is_number_integer() || t.get<long>() <= 0) {
      throw ConfigError("timeout_ms must be a positive integer");
    }
    cfg.timeoutMs = t.get<long>();
  }
  if (doc.contains("bind_join")) {
    if (!doc["bind_join"].is_boolean()) throw ConfigError("bind_join must be true or false");
    cfg.bindJoin = doc["bind_join"].get<bool>();
  }
  return cfg;
}

HubConfig loadConfig(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parseConfig(ss.str(), path.parent_path());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string databaseIri(std::string_view name) {
  return "urn:x-hub:sparql:" + std::string(name);
}

}  // namespace hub::endpoint
