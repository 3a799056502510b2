#include "hub/ontology/Ontology.h"

#include <algorithm>
#include <deque>

#include "hub/rdf/NTriples.h"
#include "hub/rdf/Vocabulary.h"

namespace hub::ontology {

namespace {

std::string joinCycle(const std::vector<std::string>& cycle) {
  std::string out;
  for (const auto& iri : cycle) {
    if (!out.empty()) out += " -> ";
    out += iri;
  }
  return out;
}

// Depth-first search for a cycle; returns the cycle path or empty.
std::vector<std::string> findCycle(const std::map<std::string, std::vector<std::string>>& up) {
  enum class Mark { None, Active, Done };
  std::map<std::string, Mark> marks;
  std::vector<std::string> stack;
  std::vector<std::string> cycle;

  auto visit = [&](auto&& self, const std::string& node) -> bool {
    marks[node] = Mark::Active;
    stack.push_back(node);
    if (auto it = up.find(node); it != up.end()) {
      for (const auto& next : it->second) {
        Mark m = marks.count(next) ? marks[next] : Mark::None;
        if (m == Mark::Active) {
          auto from = std::find(stack.begin(), stack.end(), next);
          cycle.assign(from, stack.end());
          cycle.push_back(next);
          return true;
        }
        if (m == Mark::None && self(self, next)) return true;
      }
    }
    stack.pop_back();
    marks[node] = Mark::Done;
    return false;
  };

  for (const auto& [node, _] : up) {
    if (!marks.count(node) && visit(visit, node)) return cycle;
  }
  return {};
}

std::set<std::string> closure(const std::map<std::string, std::vector<std::string>>& graph,
                              std::string_view start) {
  std::set<std::string> seen{std::string(start)};
  std::deque<std::string> todo{std::string(start)};
  while (!todo.empty()) {
    auto node = std::move(todo.front());
    todo.pop_front();
    auto it = graph.find(node);
    if (it == graph.end()) continue;
    for (const auto& next : it->second) {
      if (seen.insert(next).second) todo.push_back(next);
    }
  }
  return seen;
}

}  // namespace

CycleError::CycleError(std::vector<std::string> cycle)
    : OntologyError("cycle in hierarchy: " + joinCycle(cycle)), cycle_(std::move(cycle)) {}

OntologyModel::OntologyModel(std::set<std::string> classes,
                             std::map<std::string, PropertyKind> properties,
                             std::set<Axiom> subclassAxioms, std::set<Axiom> subpropertyAxioms,
                             std::map<std::string, std::string> datatypeRange)
    : classes_(std::move(classes)),
      properties_(std::move(properties)),
      subclassAxioms_(std::move(subclassAxioms)),
      subpropertyAxioms_(std::move(subpropertyAxioms)),
      datatypeRange_(std::move(datatypeRange)) {
  for (const auto& [sub, super] : subclassAxioms_) {
    classes_.insert(sub);
    classes_.insert(super);
  }
  for (const auto& [sub, super] : subpropertyAxioms_) {
    properties_.try_emplace(sub, PropertyKind::Unspecified);
    properties_.try_emplace(super, PropertyKind::Unspecified);
  }
  for (const auto& [property, _] : datatypeRange_) {
    properties_.try_emplace(property, PropertyKind::Data);
  }
  index();
  if (auto cycle = findCycle(classUp_); !cycle.empty()) throw CycleError(std::move(cycle));
  if (auto cycle = findCycle(propertyUp_); !cycle.empty()) throw CycleError(std::move(cycle));
}

void OntologyModel::index() {
  classDown_.clear();
  classUp_.clear();
  propertyDown_.clear();
  propertyUp_.clear();
  for (const auto& [sub, super] : subclassAxioms_) {
    classDown_[super].push_back(sub);
    classUp_[sub].push_back(super);
  }
  for (const auto& [sub, super] : subpropertyAxioms_) {
    propertyDown_[super].push_back(sub);
    propertyUp_[sub].push_back(super);
  }
}

std::set<std::string> OntologyModel::subclassesOf(std::string_view c) const {
  return closure(classDown_, c);
}

std::set<std::string> OntologyModel::subpropertiesOf(std::string_view p) const {
  return closure(propertyDown_, p);
}

std::set<std::string> OntologyModel::superclassesOf(std::string_view c) const {
  return closure(classUp_, c);
}

std::set<std::string> OntologyModel::superpropertiesOf(std::string_view p) const {
  return closure(propertyUp_, p);
}

OntologyModel OntologyModel::withSubclassAxioms(const std::set<Axiom>& extra) const {
  auto axioms = subclassAxioms_;
  axioms.insert(extra.begin(), extra.end());
  return OntologyModel(classes_, properties_, std::move(axioms), subpropertyAxioms_,
                       datatypeRange_);
}

OntologyModel OntologyModel::withSubpropertyAxioms(const std::set<Axiom>& extra) const {
  auto axioms = subpropertyAxioms_;
  axioms.insert(extra.begin(), extra.end());
  return OntologyModel(classes_, properties_, subclassAxioms_, std::move(axioms), datatypeRange_);
}

OntologyModel OntologyModel::withoutSubclassAxioms() const {
  return OntologyModel(classes_, properties_, {}, subpropertyAxioms_, datatypeRange_);
}

OntologyModel loadOntology(std::string_view ntriples) {
  std::set<std::string> classes;
  std::map<std::string, PropertyKind> properties;
  std::set<OntologyModel::Axiom> subclass;
  std::set<OntologyModel::Axiom> subproperty;
  std::map<std::string, std::string> range;

  for (const auto& t : rdf::parseNTriplesOrdered(ntriples)) {
    const auto& p = t.predicate.value();
    if (!t.object.isIri()) continue;
    const auto& s = t.subject.value();
    const auto& o = t.object.value();
    if (p == vocab::rdfs::kSubClassOf) {
      subclass.emplace(s, o);
    } else if (p == vocab::rdfs::kSubPropertyOf) {
      subproperty.emplace(s, o);
    } else if (p == vocab::rdfs::kRange) {
      range[s] = o;
    } else if (p == vocab::rdf::kType) {
      if (o == vocab::owl::kClass || o == vocab::rdfs::kClass) {
        classes.insert(s);
      } else if (o == vocab::owl::kDatatypeProperty) {
        properties[s] = PropertyKind::Data;
      } else if (o == vocab::owl::kObjectProperty) {
        properties[s] = PropertyKind::Object;
      }
    }
  }
  // rdfs:range on object properties names a class, not a datatype.
  for (auto it = range.begin(); it != range.end();) {
    auto kind = properties.find(it->first);
    if (kind != properties.end() && kind->second == PropertyKind::Object) {
      it = range.erase(it);
    } else {
      ++it;
    }
  }
  return OntologyModel(std::move(classes), std::move(properties), std::move(subclass),
                       std::move(subproperty), std::move(range));
}

}  // namespace hub::ontology
