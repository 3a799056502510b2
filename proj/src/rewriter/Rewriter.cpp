#include "hub/rewriter/Rewriter.h"

#include <algorithm>
#include <map>
#include <set>

#include "hub/rdf/Vocabulary.h"
#include "hub/rewriter/Expression.h"
#include "hub/sparql/Parser.h"

namespace hub::rewriter {

namespace {

namespace xsd = vocab::xsd;
using mappings::MappingDefinition;
using mappings::TermTemplate;
using sparql::PatternTerm;
using sparql::TriplePattern;
using sparql::Variable;

const rdf::Term* constantOf(const PatternTerm& t) { return std::get_if<rdf::Term>(&t); }

MappingMatch view(const MappingDefinition& m, std::string predicate,
                  std::optional<std::string> cls = std::nullopt) {
  MappingMatch v;
  v.mapping = &m;
  v.subject = m.target.subject;
  v.predicate = std::move(predicate);
  v.object = cls ? TermTemplate::iri(std::move(*cls)) : m.target.object;
  return v;
}

// Mappings (seen through the ontology) whose entailed triples can have the
// pattern's predicate and, for rdf:type, its class.
std::vector<MappingMatch> candidates(const TriplePattern& p, const ontology::OntologyModel& ont,
                                     const mappings::MappingRegistry& reg) {
  const std::string type(vocab::rdf::kType);
  std::vector<MappingMatch> out;
  auto expandAll = [&](const MappingDefinition& m) {
    if (m.isTypeMapping()) {
      for (const auto& c : ont.superclassesOf(m.typeClass())) out.push_back(view(m, type, c));
    } else {
      for (const auto& q : ont.superpropertiesOf(m.target.predicate)) out.push_back(view(m, q));
    }
  };

  if (std::holds_alternative<Variable>(p.predicate)) {
    for (const auto& m : reg.mappings()) expandAll(m);
    return out;
  }
  const rdf::Term* pred = constantOf(p.predicate);
  if (!pred || !pred->isIri()) return out;

  if (pred->value() != type) {
    for (const auto& q : ont.subpropertiesOf(pred->value())) {
      if (q == type) continue;
      for (const auto* m : reg.byPredicate(q)) out.push_back(view(*m, pred->value()));
    }
    return out;
  }

  const rdf::Term* cls = constantOf(p.object);
  if (cls && cls->isIri()) {
    for (const auto& c : ont.subclassesOf(cls->value())) {
      for (const auto* m : reg.byClass(c)) out.push_back(view(*m, type, cls->value()));
    }
    for (const auto* m : reg.byPredicate(type)) {
      if (!m->isTypeMapping()) out.push_back(view(*m, type));
    }
  } else if (std::holds_alternative<Variable>(p.object)) {
    for (const auto* m : reg.byPredicate(type)) expandAll(*m);
  }
  return out;
}

// Turns inverse-match captures into SQL equality constraints where that is
// exact: plain column placeholders whose value renders back to the same text.
void pushDown(const TermTemplate& t,
              const std::vector<std::pair<std::size_t, std::string>>& captures,
              const relstore::SqlQuery& source, const relstore::TableSchema& schema,
              std::vector<relstore::Constraint>& out) {
  const bool literal = t.kind == TermTemplate::Kind::Literal;
  const std::string_view datatype =
      literal && t.segments.size() == 1 ? std::string_view(t.datatype) : xsd::kString;
  for (const auto& [index, text] : captures) {
    const auto& projection = source.projections.at(index);
    if (projection.function != relstore::SqlFunction::None) continue;
    auto column = schema.columnIndex(projection.column);
    if (!column) continue;
    auto value = mappings::valueFor(text, schema.columns[*column].kind);
    if (!value) continue;
    auto rendered = literal ? mappings::lexicalFor(*value, datatype)
                            : std::optional<std::string>(relstore::describe(*value));
    if (rendered != text) continue;
    relstore::Constraint c{projection.column, std::move(*value)};
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(std::move(c));
  }
}

bool bindPosition(Solution& s, const PatternTerm& position, const rdf::Term& value) {
  if (const auto* c = constantOf(position)) return *c == value;
  const auto& name = std::get<Variable>(position).name;
  auto [it, inserted] = s.emplace(name, value);
  return inserted || it->second == value;
}

}  // namespace

relstore::SqlQuery MappingMatch::sql() const {
  relstore::SqlQuery q = mapping->source;
  q.constraints.insert(q.constraints.end(), constraints.begin(), constraints.end());
  return q;
}

std::vector<MappingMatch> matchMappings(const TriplePattern& pattern,
                                        const ontology::OntologyModel& ontology,
                                        const mappings::MappingRegistry& registry,
                                        const relstore::Backend& backend) {
  if (std::holds_alternative<sparql::Collection>(pattern.object)) return {};
  std::vector<MappingMatch> out;
  for (auto& v : candidates(pattern, ontology, registry)) {
    auto schema = backend.schema(v.mapping->source.table);
    bool viable = true;
    auto constrain = [&](const TermTemplate& t, const PatternTerm& position) {
      const rdf::Term* c = constantOf(position);
      if (!c || !viable) return;
      auto captures = mappings::matchTerm(t, *c);
      if (!captures) {
        viable = false;
        return;
      }
      if (schema) pushDown(t, *captures, v.mapping->source, *schema, v.constraints);
    };
    constrain(v.subject, pattern.subject);
    constrain(v.object, pattern.object);
    if (viable) out.push_back(std::move(v));
  }
  return out;
}

SolutionTable evaluatePattern(const TriplePattern& pattern, const Context& ctx) {
  SolutionTable table;
  sparql::collectVariables(pattern, table.variables);
  std::set<Solution> seen;
  const rdf::Term* predicateConstant = constantOf(pattern.predicate);
  for (const auto& source : ctx.sources) {
    std::map<std::string, relstore::ResultSet> cache;
    for (const auto& m : matchMappings(pattern, *ctx.ontology, *source.registry, *source.backend)) {
      auto sql = m.sql();
      auto key = sql.toSql();
      auto it = cache.find(key);
      if (it == cache.end()) {
        try {
          it = cache.emplace(key, source.backend->execute(sql)).first;
        } catch (const Error& e) {
          throw RewriteError("mapping " + m.mapping->id + " on " + source.name + ": " + e.what());
        }
      }
      const rdf::Term predicate = rdf::Term::iri(m.predicate);
      if (predicateConstant && *predicateConstant != predicate) continue;
      for (const auto& row : it->second.rows) {
        auto subject = mappings::expandTerm(m.subject, row);
        if (!subject) continue;
        auto object = mappings::expandTerm(m.object, row);
        if (!object) continue;
        Solution s;
        if (!bindPosition(s, pattern.subject, *subject) ||
            !bindPosition(s, pattern.predicate, predicate) ||
            !bindPosition(s, pattern.object, *object)) {
          continue;
        }
        if (seen.insert(s).second) table.solutions.push_back(std::move(s));
      }
    }
  }
  return table;
}

SolutionTable evaluateBgp(const std::vector<TriplePattern>& patterns, const Context& ctx) {
  SolutionTable acc = SolutionTable::unit();
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    SolutionTable next;
    try {
      next = evaluatePattern(patterns[i], ctx);
    } catch (const Error& e) {
      throw RewriteError("pattern " + std::to_string(i + 1) + ": " + e.what());
    }
    acc = join(acc, next);
    if (acc.solutions.empty()) {
      // Remaining patterns still contribute their variables to the scope.
      for (std::size_t j = i + 1; j < patterns.size(); ++j) {
        std::vector<std::string> vars;
        sparql::collectVariables(patterns[j], vars);
        for (auto& v : vars) {
          if (std::find(acc.variables.begin(), acc.variables.end(), v) == acc.variables.end()) {
            acc.variables.push_back(std::move(v));
          }
        }
      }
      break;
    }
  }
  return acc;
}

SolutionTable evaluateGroup(const std::vector<sparql::ServiceElement>& elements,
                            const Context& ctx) {
  std::vector<TriplePattern> patterns;
  std::vector<const sparql::Expr*> filters;
  for (const auto& e : elements) {
    if (const auto* t = std::get_if<TriplePattern>(&e)) {
      patterns.push_back(*t);
    } else {
      filters.push_back(&std::get<sparql::Filter>(e).expr);
    }
  }
  SolutionTable table = evaluateBgp(patterns, ctx);
  for (const auto* f : filters) {
    std::erase_if(table.solutions, [&](const Solution& s) { return !passesFilter(*f, s); });
  }
  return table;
}

SolutionTable evaluateQuery(const sparql::Query& query, const Context& ctx) {
  if (query.hasService()) {
    throw sparql::UnsupportedFeatureError("SERVICE on a SPARQL-to-SQL endpoint", 0, 0);
  }
  std::vector<sparql::ServiceElement> elements;
  for (const auto& e : query.body) {
    if (const auto* t = std::get_if<TriplePattern>(&e)) {
      elements.emplace_back(*t);
    } else {
      elements.emplace_back(std::get<sparql::Filter>(e));
    }
  }
  return project(evaluateGroup(elements, ctx), query.resultVariables(), query.distinct);
}

std::string explain(const sparql::Query& query, const Context& ctx) {
  std::string out;
  std::size_t index = 0;
  auto describePattern = [&](const TriplePattern& p, const std::string& indent) {
    out += indent + "pattern " + std::to_string(++index) + ": " + sparql::serialize(p) + "\n";
    std::size_t matched = 0;
    for (const auto& source : ctx.sources) {
      for (const auto& m :
           matchMappings(p, *ctx.ontology, *source.registry, *source.backend)) {
        ++matched;
        out += indent + "  " + source.name + " " + m.mapping->id;
        if (m.mapping->isTypeMapping() && m.object.constant != m.mapping->typeClass()) {
          out += " (as <" + m.object.constant + ">)";
        } else if (!m.mapping->isTypeMapping() && m.predicate != m.mapping->target.predicate) {
          out += " (as <" + m.predicate + ">)";
        }
        out += "\n" + indent + "    " + m.sql().toSql() + "\n";
      }
    }
    if (matched == 0) out += indent + "  no matching mappings\n";
  };
  for (const auto& e : query.body) {
    if (const auto* t = std::get_if<TriplePattern>(&e)) {
      describePattern(*t, "");
    } else if (const auto* f = std::get_if<sparql::Filter>(&e)) {
      out += "filter: " + sparql::serialize(f->expr) + "\n";
    } else {
      const auto& s = std::get<sparql::Service>(e);
      out += "service <" + s.endpoint + ">\n";
      for (const auto& inner : s.elements) {
        if (const auto* it = std::get_if<TriplePattern>(&inner)) {
          describePattern(*it, "  ");
        } else {
          out += "  filter: " + sparql::serialize(std::get<sparql::Filter>(inner).expr) + "\n";
        }
      }
    }
  }
  return out;
}

}  // namespace hub::rewriter
