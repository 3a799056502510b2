#include <regex>

#include "hub/rdf/Vocabulary.h"
#include "hub/sparql/Parser.h"

namespace hub::sparql {

namespace {

namespace xsd = vocab::xsd;

// Literals that re-lex to the same datatype without an explicit ^^.
bool bareNumber(const rdf::Term& t) {
  static const std::regex kInteger("-?[0-9]+");
  static const std::regex kDecimal("-?[0-9]*\\.[0-9]+");
  static const std::regex kDouble("-?([0-9]+(\\.[0-9]*)?|\\.[0-9]+)[eE][+-]?[0-9]+");
  const auto& dt = t.datatype();
  if (dt == xsd::kInteger) return std::regex_match(t.value(), kInteger);
  if (dt == xsd::kDecimal) return std::regex_match(t.value(), kDecimal);
  if (dt == xsd::kDouble) return std::regex_match(t.value(), kDouble);
  return false;
}

std::string term(const rdf::Term& t) {
  if (t.isIri()) return "<" + rdf::escapeIri(t.value()) + ">";
  std::string quoted = "\"" + rdf::escapeString(t.value()) + "\"";
  if (t.hasLanguage()) return quoted + "@" + t.language();
  if (t.datatype() == xsd::kString) return quoted;
  if (t.datatype() == xsd::kBoolean && (t.value() == "true" || t.value() == "false")) {
    return t.value();
  }
  if (bareNumber(t)) return t.value();
  return quoted + "^^<" + rdf::escapeIri(t.datatype()) + ">";
}

const char* opText(Expr::Op op) {
  switch (op) {
    case Expr::Op::Or: return "||";
    case Expr::Op::And: return "&&";
    case Expr::Op::Eq: return "=";
    case Expr::Op::Ne: return "!=";
    case Expr::Op::Lt: return "<";
    case Expr::Op::Gt: return ">";
    case Expr::Op::Le: return "<=";
    case Expr::Op::Ge: return ">=";
    case Expr::Op::Add: return "+";
    case Expr::Op::Sub: return "-";
    case Expr::Op::Mul: return "*";
    case Expr::Op::Div: return "/";
    case Expr::Op::Not: return "!";
    case Expr::Op::Neg: return "-";
  }
  return "?";
}

std::string element(const ServiceElement& e) {
  if (const auto* t = std::get_if<TriplePattern>(&e)) return serialize(*t);
  return "FILTER(" + serialize(std::get<Filter>(e).expr) + ")";
}

}  // namespace

std::string serialize(const PatternTerm& t) {
  if (const auto* v = std::get_if<Variable>(&t)) return "?" + v->name;
  if (const auto* r = std::get_if<rdf::Term>(&t)) return term(*r);
  std::string out = "(";
  for (const auto& item : std::get<Collection>(t).items) {
    out += " ";
    if (const auto* v = std::get_if<Variable>(&item)) {
      out += "?" + v->name;
    } else {
      out += term(std::get<rdf::Term>(item));
    }
  }
  return out + " )";
}

std::string serialize(const TriplePattern& p) {
  return serialize(p.subject) + " " + serialize(p.predicate) + " " + serialize(p.object) + " .";
}

std::string serialize(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Variable: return "?" + e.variable;
    case Expr::Kind::Constant: return term(e.constant);
    case Expr::Kind::Operator:
      if (e.args.size() == 1) return std::string("(") + opText(e.op) + serialize(e.args[0]) + ")";
      return "(" + serialize(e.args[0]) + " " + opText(e.op) + " " + serialize(e.args[1]) + ")";
    case Expr::Kind::Call: {
      std::string name;
      switch (e.fn) {
        case Expr::Fn::Bound: name = "BOUND"; break;
        case Expr::Fn::Regex: name = "REGEX"; break;
        case Expr::Fn::Str: name = "STR"; break;
        case Expr::Fn::Year: name = "YEAR"; break;
        case Expr::Fn::Cast: name = "<" + e.castTarget + ">"; break;
      }
      std::string out = name + "(";
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i) out += ", ";
        out += serialize(e.args[i]);
      }
      return out + ")";
    }
  }
  return {};
}

std::string serialize(const Query& q) {
  std::string out;
  for (const auto& [name, iri] : q.prefixes) out += "PREFIX " + name + ": <" + iri + ">\n";
  out += "SELECT ";
  if (q.distinct) out += "DISTINCT ";
  if (q.selectAll) {
    out += "*";
  } else {
    for (std::size_t i = 0; i < q.projection.size(); ++i) {
      if (i) out += " ";
      out += "?" + q.projection[i];
    }
  }
  out += "\nWHERE {\n";
  for (const auto& e : q.body) {
    if (const auto* s = std::get_if<Service>(&e)) {
      out += "  SERVICE <" + rdf::escapeIri(s->endpoint) + "> {\n";
      for (const auto& inner : s->elements) out += "    " + element(inner) + "\n";
      out += "  }\n";
    } else if (const auto* t = std::get_if<TriplePattern>(&e)) {
      out += "  " + serialize(*t) + "\n";
    } else {
      out += "  FILTER(" + serialize(std::get<Filter>(e).expr) + ")\n";
    }
  }
  return out + "}\n";
}

}  // namespace hub::sparql
