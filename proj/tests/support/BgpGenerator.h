#pragma once

#include <random>
#include <string>
#include <vector>

#include "hub/ontology/Ontology.h"
#include "hub/rdf/Term.h"
#include "hub/rdf/Vocabulary.h"
#include "hub/sparql/Ast.h"

namespace hubtest {

// Random BGPs over the demo vocabulary and data, with constants drawn from
// the materialized graph so that pushdown paths are exercised.
class BgpGenerator {
 public:
  BgpGenerator(unsigned seed, const hub::rdf::TripleSet& graph, const hub::ontology::OntologyModel& ont)
      : rng_(seed) {
    for (const auto& t : graph) {
      subjects_.push_back(t.subject);
      objects_.push_back(t.object);
    }
    for (const auto& [p, kind] : ont.properties()) predicates_.push_back(hub::rdf::Term::iri(p));
    for (const auto& c : ont.classes()) classes_.push_back(hub::rdf::Term::iri(c));
  }

  std::vector<hub::sparql::TriplePattern> bgp() {
    std::vector<hub::sparql::TriplePattern> out;
    for (int i = 1 + pick(3); i > 0; --i) out.push_back(pattern());
    return out;
  }

 private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  hub::sparql::Variable var() {
    static const char* names[] = {"a", "b", "c", "d"};
    return hub::sparql::Variable{names[pick(4)]};
  }
  const hub::rdf::Term& from(const std::vector<hub::rdf::Term>& v) { return v[pick(static_cast<int>(v.size()))]; }

  hub::sparql::TriplePattern pattern() {
    hub::sparql::TriplePattern t;
    t.subject = pick(4) == 0 ? hub::sparql::PatternTerm(from(subjects_)) : var();
    switch (pick(5)) {
      case 0:
        t.predicate = hub::rdf::Term::iri(std::string(hub::vocab::rdf::kType));
        t.object = pick(3) ? hub::sparql::PatternTerm(from(classes_)) : var();
        return t;
      case 1: t.predicate = var(); break;
      default: t.predicate = from(predicates_);
    }
    t.object = pick(4) == 0 ? hub::sparql::PatternTerm(from(objects_)) : var();
    return t;
  }

  std::mt19937 rng_;
  std::vector<hub::rdf::Term> subjects_, objects_, predicates_, classes_;
};

}  // namespace hubtest
