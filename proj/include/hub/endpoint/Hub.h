#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "hub/endpoint/Catalogue.h"
#include "hub/endpoint/Config.h"
#include "hub/federation/Federation.h"
#include "hub/mappings/Registry.h"
#include "hub/ontology/Ontology.h"
#include "hub/relstore/Database.h"
#include "hub/rewriter/Rewriter.h"

namespace hub::endpoint {

// Everything the endpoints serve. Immutable after construction, so one
// instance can answer concurrent requests.
class Hub {
 public:
  // Loads every file the config names. Throws ConfigError naming the
  // offending path.
  explicit Hub(HubConfig config);
  Hub(const Hub&) = delete;
  Hub& operator=(const Hub&) = delete;

  const HubConfig& config() const { return config_; }
  const ontology::OntologyModel& ontology() const { return ontology_; }

  std::vector<std::string> databaseNames() const;
  // nullptr for unknown names.
  const rewriter::Context* databaseContext(std::string_view name) const;
  const relstore::Database* database(std::string_view name) const;
  const mappings::MappingRegistry* mappings(std::string_view name) const;

  // All databases at once; registered under config().hubIri.
  const rewriter::Context& combinedContext() const { return combined_; }

  const federation::EndpointRegistry& registry() const { return registry_; }
  federation::FederationPolicy policy() const;

  const CatalogueDoc& catalogue() const { return catalogue_; }
  const rdf::TripleSet& catalogueRdf() const { return catalogueRdf_; }

 private:
  struct Db {
    std::string name;
    relstore::Database database;
    mappings::MappingRegistry mappings;
    rewriter::Context context;
  };
  const Db* find(std::string_view name) const;

  HubConfig config_;
  ontology::OntologyModel ontology_;
  std::vector<std::unique_ptr<Db>> dbs_;
  rewriter::Context combined_;
  federation::EndpointRegistry registry_;
  CatalogueDoc catalogue_;
  rdf::TripleSet catalogueRdf_;
};

}  // namespace hub::endpoint
