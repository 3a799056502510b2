#pragma once

#include <string>
#include <vector>

#include "hub/Error.h"
#include "hub/mappings/Registry.h"
#include "hub/ontology/Ontology.h"
#include "hub/relstore/Database.h"
#include "hub/rewriter/Solution.h"
#include "hub/sparql/Ast.h"

namespace hub::rewriter {

class RewriteError : public Error {
 public:
  using Error::Error;
};

// One database with its mappings.
struct Source {
  std::string name;
  const mappings::MappingRegistry* registry = nullptr;
  const relstore::Backend* backend = nullptr;
};

// Read-only evaluation context. A per-database endpoint has one source; the
// hub-wide endpoint unions the answers of every source.
struct Context {
  const ontology::OntologyModel* ontology = nullptr;
  std::vector<Source> sources;
};

// A mapping seen through the ontology: the triples it entails under the
// given predicate (a superproperty of the mapped one) or, for rdf:type
// mappings, the given class (a superclass of the mapped one).
struct MappingMatch {
  const mappings::MappingDefinition* mapping = nullptr;
  mappings::TermTemplate subject;
  std::string predicate;
  mappings::TermTemplate object;
  // Equality constraints pushed into the mapping's SQL. Only constants
  // captured by plain column placeholders are pushed; the rest are checked
  // after expansion.
  std::vector<relstore::Constraint> constraints;

  relstore::SqlQuery sql() const;
};

// `backend` supplies column types for constant pushdown.
std::vector<MappingMatch> matchMappings(const sparql::TriplePattern& pattern,
                                        const ontology::OntologyModel& ontology,
                                        const mappings::MappingRegistry& registry,
                                        const relstore::Backend& backend);

// Solutions of a single pattern over all sources, without duplicates.
SolutionTable evaluatePattern(const sparql::TriplePattern& pattern, const Context& ctx);

// Patterns joined left to right. Backend failures are rethrown as
// RewriteError naming the pattern index.
SolutionTable evaluateBgp(const std::vector<sparql::TriplePattern>& patterns, const Context& ctx);

// A SERVICE-free group: the BGP of its patterns, then its filters in order.
SolutionTable evaluateGroup(const std::vector<sparql::ServiceElement>& elements,
                            const Context& ctx);

// Throws UnsupportedFeatureError if the query contains SERVICE.
SolutionTable evaluateQuery(const sparql::Query& query, const Context& ctx);

// Matched mappings and generated SQL per pattern, for diagnostics.
std::string explain(const sparql::Query& query, const Context& ctx);

}  // namespace hub::rewriter
