#include "hub/sparql/Ast.h"

#include <algorithm>

namespace hub::sparql {

Expr Expr::var(std::string name) {
  Expr e;
  e.kind = Kind::Variable;
  e.variable = std::move(name);
  return e;
}

Expr Expr::lit(rdf::Term term) {
  Expr e;
  e.kind = Kind::Constant;
  e.constant = std::move(term);
  return e;
}

Expr Expr::binary(Op op, Expr lhs, Expr rhs) {
  Expr e;
  e.kind = Kind::Operator;
  e.op = op;
  e.args.push_back(std::move(lhs));
  e.args.push_back(std::move(rhs));
  return e;
}

Expr Expr::unary(Op op, Expr operand) {
  Expr e;
  e.kind = Kind::Operator;
  e.op = op;
  e.args.push_back(std::move(operand));
  return e;
}

Expr Expr::call(Fn fn, std::vector<Expr> args) {
  Expr e;
  e.kind = Kind::Call;
  e.fn = fn;
  e.args = std::move(args);
  return e;
}

Expr Expr::cast(std::string datatype, Expr operand) {
  Expr e = call(Fn::Cast, {});
  e.castTarget = std::move(datatype);
  e.args.push_back(std::move(operand));
  return e;
}

namespace {

void addUnique(std::vector<std::string>& out, const std::string& name) {
  if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
}

}  // namespace

void collectVariables(const PatternTerm& term, std::vector<std::string>& out) {
  if (const auto* v = std::get_if<Variable>(&term)) {
    addUnique(out, v->name);
  } else if (const auto* c = std::get_if<Collection>(&term)) {
    for (const auto& item : c->items) {
      if (const auto* iv = std::get_if<Variable>(&item)) addUnique(out, iv->name);
    }
  }
}

void collectVariables(const TriplePattern& pattern, std::vector<std::string>& out) {
  collectVariables(pattern.subject, out);
  collectVariables(pattern.predicate, out);
  collectVariables(pattern.object, out);
}

void collectVariables(const Expr& expr, std::set<std::string>& out) {
  if (expr.kind == Expr::Kind::Variable) out.insert(expr.variable);
  for (const auto& a : expr.args) collectVariables(a, out);
}

bool Query::hasService() const {
  return std::any_of(body.begin(), body.end(),
                     [](const GroupElement& e) { return std::holds_alternative<Service>(e); });
}

std::vector<std::string> Query::patternVariables() const {
  std::vector<std::string> out;
  for (const auto& element : body) {
    if (const auto* t = std::get_if<TriplePattern>(&element)) {
      collectVariables(*t, out);
    } else if (const auto* s = std::get_if<Service>(&element)) {
      for (const auto& inner : s->elements) {
        if (const auto* it = std::get_if<TriplePattern>(&inner)) collectVariables(*it, out);
      }
    }
  }
  return out;
}

std::vector<std::string> Query::resultVariables() const {
  return selectAll ? patternVariables() : projection;
}

}  // namespace hub::sparql
