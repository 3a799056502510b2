#include "hub/endpoint/Hub.h"

#include <fstream>
#include <sstream>

#include "hub/rdf/NTriples.h"

namespace hub::endpoint {

namespace {

std::string read(const std::filesystem::path& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(std::string("cannot read ") + what + " " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Hub::Hub(HubConfig config) : config_(std::move(config)) {
  const auto& onto = config_.ontology;
  try {
    ontology_ = ontology::loadOntology(read(onto, "ontology"));
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(onto.string() + ": " + e.what());
  }
  combined_.ontology = &ontology_;

  for (const auto& dc : config_.databases) {
    auto db = std::make_unique<Db>();
    db->name = dc.name;
    const std::string fixture = read(dc.fixture, "fixture");
    const std::string mappingText = read(dc.mappings, "mappings");
    try {
      db->database.loadFixture(fixture);
    } catch (const Error& e) {
      throw ConfigError(dc.fixture.string() + ": " + e.what());
    }
    try {
      db->mappings = mappings::parseMappingDocument(mappingText);
      db->mappings.validate(db->database);
    } catch (const Error& e) {
      throw ConfigError(dc.mappings.string() + ": " + e.what());
    }
    db->context = {&ontology_, {{db->name, &db->mappings, &db->database}}};
    combined_.sources.push_back(db->context.sources.front());
    dbs_.push_back(std::move(db));
  }

  for (const auto& db : dbs_) {
    registry_.add(databaseIri(db->name),
                  std::make_shared<federation::RewriterEndpoint>(db->context));
  }
  registry_.add(config_.hubIri, std::make_shared<federation::RewriterEndpoint>(combined_));
  for (const auto& g : config_.graphs) {
    try {
      registry_.add(g.iri, std::make_shared<federation::GraphEndpoint>(
                               rdf::parseNTriples(read(g.file, "graph"))));
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      throw ConfigError(g.file.string() + ": " + e.what());
    }
  }
  for (const auto& r : config_.remotes) {
    try {
      registry_.add(r.iri, std::make_shared<federation::RemoteEndpoint>(r.url));
    } catch (const Error& e) {
      throw ConfigError("remote <" + r.iri + ">: " + e.what());
    }
  }
  if (!config_.defaultDatabase.empty()) registry_.setDefault(databaseIri(config_.defaultDatabase));

  catalogue_ = buildCatalogue(combined_);
  catalogueRdf_ = buildCatalogueRdf(combined_);
}

std::vector<std::string> Hub::databaseNames() const {
  std::vector<std::string> out;
  for (const auto& db : dbs_) out.push_back(db->name);
  return out;
}

const Hub::Db* Hub::find(std::string_view name) const {
  for (const auto& db : dbs_) {
    if (db->name == name) return db.get();
  }
  return nullptr;
}

const rewriter::Context* Hub::databaseContext(std::string_view name) const {
  const Db* db = find(name);
  return db ? &db->context : nullptr;
}

const relstore::Database* Hub::database(std::string_view name) const {
  const Db* db = find(name);
  return db ? &db->database : nullptr;
}

const mappings::MappingRegistry* Hub::mappings(std::string_view name) const {
  const Db* db = find(name);
  return db ? &db->mappings : nullptr;
}

federation::FederationPolicy Hub::policy() const {
  federation::FederationPolicy p;
  p.bindJoin = config_.bindJoin;
  p.timeout = std::chrono::milliseconds(config_.timeoutMs);
  return p;
}

}  // namespace hub::endpoint
