#pragma once

#include <compare>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "hub/rdf/Term.h"

namespace hub::sparql {

struct Variable {
  std::string name;  // without the leading '?'
  friend auto operator<=>(const Variable&, const Variable&) = default;
  friend bool operator==(const Variable&, const Variable&) = default;
};

// RDF collection "( a b c )" in object position. Only used by list-argument
// property functions; never matched by relational mappings.
struct Collection {
  std::vector<std::variant<Variable, rdf::Term>> items;
  friend bool operator==(const Collection&, const Collection&) = default;
};

using PatternTerm = std::variant<Variable, rdf::Term, Collection>;

struct TriplePattern {
  PatternTerm subject;
  PatternTerm predicate;
  PatternTerm object;
  friend bool operator==(const TriplePattern&, const TriplePattern&) = default;
};

// Filter expression tree.
struct Expr {
  enum class Kind { Variable, Constant, Operator, Call };
  enum class Op { Or, And, Eq, Ne, Lt, Gt, Le, Ge, Add, Sub, Mul, Div, Not, Neg };
  enum class Fn { Bound, Regex, Str, Year, Cast };

  Kind kind = Kind::Constant;
  std::string variable;    // Variable
  rdf::Term constant;      // Constant
  Op op = Op::And;         // Operator
  Fn fn = Fn::Bound;       // Call
  std::string castTarget;  // datatype IRI for Fn::Cast
  std::vector<Expr> args;

  static Expr var(std::string name);
  static Expr lit(rdf::Term term);
  static Expr binary(Op op, Expr lhs, Expr rhs);
  static Expr unary(Op op, Expr operand);
  static Expr call(Fn fn, std::vector<Expr> args);
  static Expr cast(std::string datatype, Expr operand);

  friend bool operator==(const Expr&, const Expr&) = default;
};

struct Filter {
  Expr expr;
  friend bool operator==(const Filter&, const Filter&) = default;
};

using ServiceElement = std::variant<TriplePattern, Filter>;

struct Service {
  std::string endpoint;
  std::vector<ServiceElement> elements;
  friend bool operator==(const Service&, const Service&) = default;
};

using GroupElement = std::variant<TriplePattern, Filter, Service>;

struct Query {
  std::map<std::string, std::string> prefixes;
  bool distinct = false;
  bool selectAll = false;              // SELECT *
  std::vector<std::string> projection;  // variable names, in order
  std::vector<GroupElement> body;

  friend bool operator==(const Query&, const Query&) = default;

  bool hasService() const;
  // Variables mentioned in triple patterns, in order of first appearance.
  std::vector<std::string> patternVariables() const;
  // The projection, or patternVariables() for SELECT *.
  std::vector<std::string> resultVariables() const;
};

void collectVariables(const PatternTerm& term, std::vector<std::string>& out);
void collectVariables(const TriplePattern& pattern, std::vector<std::string>& out);
void collectVariables(const Expr& expr, std::set<std::string>& out);

}  // namespace hub::sparql
