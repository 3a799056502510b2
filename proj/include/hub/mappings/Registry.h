#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hub/Error.h"
#include "hub/mappings/Template.h"
#include "hub/rdf/Term.h"
#include "hub/relstore/Database.h"
#include "hub/relstore/Sql.h"

namespace hub::mappings {

class MappingError : public Error {
 public:
  using Error::Error;
};

class MappingSyntaxError : public SyntaxError {
 public:
  using SyntaxError::SyntaxError;
};

struct MappingDefinition {
  std::string id;
  TripleTemplate target;
  std::string sourceText;
  relstore::SqlQuery source;

  // True for `?x rdf:type <Class>` mappings.
  bool isTypeMapping() const;
  // The class of a type mapping.
  const std::string& typeClass() const { return target.object.constant; }
};

// Mapping definitions with a predicate index and a class index for rdf:type
// mappings. The indexes are rebuilt on every mutation.
class MappingRegistry {
 public:
  void addPrefix(std::string name, std::string iri);
  // Throws MappingError on a duplicate id.
  void add(MappingDefinition mapping);

  const std::map<std::string, std::string>& prefixes() const { return prefixes_; }
  const std::vector<MappingDefinition>& mappings() const { return mappings_; }
  const MappingDefinition* find(std::string_view id) const;

  // Mappings whose target predicate is `predicate` (rdf:type included).
  std::vector<const MappingDefinition*> byPredicate(std::string_view predicate) const;
  // rdf:type mappings asserting class `cls`.
  std::vector<const MappingDefinition*> byClass(std::string_view cls) const;

  // Checks every source against the backend schema. Throws MappingError
  // naming the mapping id.
  void validate(const relstore::Backend& backend) const;

 private:
  void reindex();

  std::map<std::string, std::string> prefixes_;
  std::vector<MappingDefinition> mappings_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> byPredicate_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> byClass_;
  std::map<std::string, std::size_t, std::less<>> byId_;
};

// Mapping document format:
//   prefix <name>: <iri>
//   mappingId <id>
//   target <subject-template> <predicate> <object-template> .
//   source <sql>
// Blank lines and lines starting with '#' are ignored between blocks.
MappingRegistry parseMappingDocument(std::string_view text);

// Rows of the mapping's source expanded through its target template.
rdf::TripleSet materialize(const MappingDefinition& mapping, const relstore::Backend& backend);

// Union over all mappings. Backend errors are rethrown as MappingError
// annotated with the mapping id.
rdf::TripleSet materializeAll(const MappingRegistry& registry, const relstore::Backend& backend);

}  // namespace hub::mappings
