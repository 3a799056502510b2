#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hub/Error.h"
#include "hub/rdf/Term.h"

namespace hub::ontology {

class OntologyError : public Error {
 public:
  using Error::Error;
};

// Thrown when the subclass or subproperty graph contains a cycle. `cycle()`
// lists the IRIs along the cycle, first element repeated at the end.
class CycleError : public OntologyError {
 public:
  explicit CycleError(std::vector<std::string> cycle);
  const std::vector<std::string>& cycle() const { return cycle_; }

 private:
  std::vector<std::string> cycle_;
};

enum class PropertyKind { Unspecified, Data, Object };

// Class and property hierarchy. Immutable once built; all queries are const.
class OntologyModel {
 public:
  using Axiom = std::pair<std::string, std::string>;  // (sub, super)

  OntologyModel() = default;

  // Builds a model and checks acyclicity. IRIs named in axioms are added to
  // the class or property sets.
  OntologyModel(std::set<std::string> classes, std::map<std::string, PropertyKind> properties,
                std::set<Axiom> subclassAxioms, std::set<Axiom> subpropertyAxioms,
                std::map<std::string, std::string> datatypeRange = {});

  const std::set<std::string>& classes() const { return classes_; }
  const std::map<std::string, PropertyKind>& properties() const { return properties_; }
  const std::set<Axiom>& subclassAxioms() const { return subclassAxioms_; }
  const std::set<Axiom>& subpropertyAxioms() const { return subpropertyAxioms_; }
  const std::map<std::string, std::string>& datatypeRange() const { return datatypeRange_; }

  // Reflexive-transitive closure below `c`; an unknown IRI yields {c}.
  std::set<std::string> subclassesOf(std::string_view c) const;
  std::set<std::string> subpropertiesOf(std::string_view p) const;
  // Reflexive-transitive closure above.
  std::set<std::string> superclassesOf(std::string_view c) const;
  std::set<std::string> superpropertiesOf(std::string_view p) const;

  // Returns a copy with the given axioms added (used for what-if tests).
  OntologyModel withSubclassAxioms(const std::set<Axiom>& extra) const;
  OntologyModel withSubpropertyAxioms(const std::set<Axiom>& extra) const;
  // Returns a copy with every subclass axiom removed.
  OntologyModel withoutSubclassAxioms() const;

 private:
  using Graph = std::map<std::string, std::vector<std::string>>;

  void index();

  std::set<std::string> classes_;
  std::map<std::string, PropertyKind> properties_;
  std::set<Axiom> subclassAxioms_;
  std::set<Axiom> subpropertyAxioms_;
  std::map<std::string, std::string> datatypeRange_;

  Graph classDown_, classUp_, propertyDown_, propertyUp_;
};

// Loads a model from N-Triples using rdfs:subClassOf, rdfs:subPropertyOf,
// rdf:type {owl:Class, rdfs:Class, owl:DatatypeProperty,
// owl:ObjectProperty} and rdfs:range. Other triples are ignored.
OntologyModel loadOntology(std::string_view ntriples);

}  // namespace hub::ontology
