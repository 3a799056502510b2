#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hub/rdf/Term.h"
#include "hub/rewriter/Rewriter.h"

namespace hub::endpoint {

// The two relations every catalogue and item carries.
inline constexpr std::string_view kContentTypeRel = "urn:X-hypercat:rels:isContentType";
inline constexpr std::string_view kDescriptionRel = "urn:X-hypercat:rels:hasDescription:en";
inline constexpr std::string_view kCatalogueMediaType = "application/vnd.hypercat.catalogue+json";
inline constexpr std::string_view kCatalogueDescription = "BT Hypercat data hub";
inline constexpr std::string_view kItemMediaType = "application/json";

struct Relation {
  std::string rel;
  std::string val;
  friend bool operator==(const Relation&, const Relation&) = default;
};

struct CatalogueItem {
  std::string href;
  std::vector<Relation> metadata;
};

struct CatalogueDoc {
  std::vector<Relation> metadata;
  std::vector<CatalogueItem> items;  // sorted by href
};

// One item per feed and per datastream visible through `ctx`. Items are
// described by the feed title and carry their most specific class as an
// rdf:type relation.
CatalogueDoc buildCatalogue(const rewriter::Context& ctx);

// Hypercat JSON.
std::string toJson(const CatalogueDoc& doc);

// Each item typed with its most specific class, plus the feed to
// datastream links.
rdf::TripleSet buildCatalogueRdf(const rewriter::Context& ctx);

}  // namespace hub::endpoint
