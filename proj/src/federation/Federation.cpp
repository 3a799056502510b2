#include "hub/federation/Federation.h"

#include <algorithm>
#include <set>

#include "hub/rdf/Vocabulary.h"
#include "hub/rewriter/Expression.h"
#include "hub/sparql/Parser.h"

namespace hub::federation {

using rdf::Term;
using rewriter::Solution;
using rewriter::SolutionTable;
using sparql::Expr;
using sparql::PatternTerm;
using sparql::ServiceElement;
using sparql::TriplePattern;
using sparql::Variable;

ServiceError::ServiceError(ServiceErrorKind kind, std::string endpoint, const std::string& detail)
    : Error("SERVICE <" + endpoint + ">: " + toString(kind) +
            (detail.empty() ? "" : ": " + detail)),
      kind_(kind),
      endpoint_(std::move(endpoint)) {}

void EndpointRegistry::add(std::string iri, std::shared_ptr<const Endpoint> endpoint) {
  if (!endpoint) throw Error("null endpoint for <" + iri + ">");
  if (entries_.count(iri)) throw Error("endpoint <" + iri + "> registered twice");
  entries_.emplace(std::move(iri), std::move(endpoint));
}

void EndpointRegistry::remove(const std::string& iri) { entries_.erase(iri); }

const Endpoint* EndpointRegistry::find(const std::string& iri) const {
  auto it = entries_.find(iri);
  return it == entries_.end() ? nullptr : it->second.get();
}

std::vector<std::string> EndpointRegistry::iris() const {
  std::vector<std::string> out;
  for (const auto& [iri, _] : entries_) out.push_back(iri);
  return out;
}

namespace {

PatternTerm substituteTerm(const PatternTerm& t, const Solution& s) {
  if (const auto* v = std::get_if<Variable>(&t)) {
    auto it = s.find(v->name);
    if (it != s.end()) return it->second;
    return t;
  }
  if (const auto* c = std::get_if<sparql::Collection>(&t)) {
    sparql::Collection out;
    for (const auto& item : c->items) {
      const auto* v = std::get_if<Variable>(&item);
      auto it = v ? s.find(v->name) : s.end();
      if (it != s.end()) {
        out.items.emplace_back(it->second);
      } else {
        out.items.push_back(item);
      }
    }
    return out;
  }
  return t;
}

Expr substituteExpr(const Expr& e, const Solution& s) {
  if (e.kind == Expr::Kind::Variable) {
    auto it = s.find(e.variable);
    return it == s.end() ? e : Expr::lit(it->second);
  }
  if (e.kind == Expr::Kind::Call && e.fn == Expr::Fn::Bound && !e.args.empty() &&
      e.args[0].kind == Expr::Kind::Variable && s.count(e.args[0].variable)) {
    return Expr::lit(Term::literal("true", vocab::xsd::kBoolean));
  }
  Expr out = e;
  for (auto& a : out.args) a = substituteExpr(a, s);
  return out;
}

bool literalAt(const PatternTerm& t) {
  const auto* term = std::get_if<Term>(&t);
  return term && term->isLiteral();
}

std::vector<std::string> blockVariables(const std::vector<ServiceElement>& elements) {
  std::vector<std::string> vars;
  for (const auto& e : elements) {
    if (const auto* t = std::get_if<TriplePattern>(&e)) sparql::collectVariables(*t, vars);
  }
  return vars;
}

std::vector<std::string> unionVariables(std::vector<std::string> a,
                                        const std::vector<std::string>& b) {
  for (const auto& v : b) {
    if (std::find(a.begin(), a.end(), v) == a.end()) a.push_back(v);
  }
  return a;
}

class Caller {
 public:
  Caller(const sparql::Service& block, const Endpoint& endpoint, const FederationPolicy& policy)
      : block_(block), endpoint_(endpoint), policy_(policy) {}

  SolutionTable operator()(const sparql::Query& q) const {
    SolutionTable result;
    try {
      result = endpoint_.select(q, policy_.timeout);
    } catch (const EndpointError& e) {
      throw ServiceError(e.kind(), block_.endpoint, e.what());
    } catch (const ServiceError&) {
      throw;
    } catch (const Error& e) {
      throw ServiceError(ServiceErrorKind::Evaluation, block_.endpoint, e.what());
    }
    if (result.solutions.size() > policy_.maxSolutions) {
      throw ServiceError(ServiceErrorKind::TooManySolutions, block_.endpoint,
                         std::to_string(result.solutions.size()) + " solutions, limit " +
                             std::to_string(policy_.maxSolutions));
    }
    return result;
  }

 private:
  const sparql::Service& block_;
  const Endpoint& endpoint_;
  const FederationPolicy& policy_;
};

}  // namespace

std::optional<std::vector<ServiceElement>> substitute(const std::vector<ServiceElement>& elements,
                                                      const Solution& s) {
  std::vector<ServiceElement> out;
  out.reserve(elements.size());
  for (const auto& e : elements) {
    if (const auto* t = std::get_if<TriplePattern>(&e)) {
      TriplePattern p{substituteTerm(t->subject, s), substituteTerm(t->predicate, s),
                      substituteTerm(t->object, s)};
      if (literalAt(p.subject) || literalAt(p.predicate)) return std::nullopt;
      out.emplace_back(std::move(p));
    } else {
      out.emplace_back(sparql::Filter{substituteExpr(std::get<sparql::Filter>(e).expr, s)});
    }
  }
  return out;
}

sparql::Query subquery(const std::vector<ServiceElement>& elements) {
  sparql::Query q;
  for (const auto& e : elements) {
    std::visit([&](const auto& x) { q.body.emplace_back(x); }, e);
  }
  q.projection = q.patternVariables();
  q.selectAll = q.projection.empty();
  return q;
}

SolutionTable executeService(const sparql::Service& block, const SolutionTable& incoming,
                             const EndpointRegistry& registry, const FederationPolicy& policy) {
  const Endpoint* endpoint = registry.find(block.endpoint);
  if (!endpoint) throw ServiceError(ServiceErrorKind::UnknownEndpoint, block.endpoint, "");
  const auto localVars = blockVariables(block.elements);
  SolutionTable out;
  out.variables = unionVariables(incoming.variables, localVars);
  if (incoming.solutions.empty()) return out;

  Caller call(block, *endpoint, policy);

  if (policy.bindJoin) {
    std::map<std::string, SolutionTable> cache;
    for (const auto& s : incoming.solutions) {
      auto elements = substitute(block.elements, s);
      if (!elements) continue;
      const auto q = subquery(*elements);
      const auto key = sparql::serialize(q);
      auto it = cache.find(key);
      if (it == cache.end()) it = cache.emplace(key, call(q)).first;
      for (const auto& r : it->second.solutions) {
        if (!rewriter::compatible(s, r)) continue;
        Solution merged = s;
        merged.insert(r.begin(), r.end());
        out.solutions.push_back(std::move(merged));
      }
    }
    return out;
  }

  // Hash join. Filters that need outside variables wait until after the join.
  const std::set<std::string> local(localVars.begin(), localVars.end());
  std::vector<ServiceElement> sent;
  std::vector<const Expr*> deferred;
  for (const auto& e : block.elements) {
    if (const auto* f = std::get_if<sparql::Filter>(&e)) {
      std::set<std::string> used;
      sparql::collectVariables(f->expr, used);
      if (!std::includes(local.begin(), local.end(), used.begin(), used.end())) {
        deferred.push_back(&f->expr);
        continue;
      }
    }
    sent.push_back(e);
  }
  SolutionTable joined = rewriter::join(incoming, call(subquery(sent)));
  for (auto& s : joined.solutions) {
    bool keep = std::all_of(deferred.begin(), deferred.end(),
                            [&](const Expr* f) { return rewriter::passesFilter(*f, s); });
    if (keep) out.solutions.push_back(std::move(s));
  }
  return out;
}

SolutionTable evaluateFederated(const sparql::Query& query, const EndpointRegistry& registry,
                                const FederationPolicy& policy) {
  SolutionTable acc = SolutionTable::unit();
  std::vector<ServiceElement> pending;
  auto flush = [&] {
    if (pending.empty()) return;
    acc = executeService(sparql::Service{registry.defaultIri(), std::move(pending)}, acc,
                         registry, policy);
    pending.clear();
  };
  for (const auto& element : query.body) {
    if (const auto* t = std::get_if<TriplePattern>(&element)) {
      pending.emplace_back(*t);
    } else if (const auto* f = std::get_if<sparql::Filter>(&element)) {
      flush();
      std::vector<Solution> kept;
      for (auto& s : acc.solutions) {
        if (rewriter::passesFilter(f->expr, s)) kept.push_back(std::move(s));
      }
      acc.solutions = std::move(kept);
    } else {
      flush();
      acc = executeService(std::get<sparql::Service>(element), acc, registry, policy);
    }
  }
  flush();
  return rewriter::project(acc, query.resultVariables(), query.distinct);
}

}  // namespace hub::federation
