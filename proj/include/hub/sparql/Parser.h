#pragma once

#include <string>
#include <string_view>

#include "hub/Error.h"
#include "hub/sparql/Ast.h"

namespace hub::sparql {

class ParseError : public SyntaxError {
 public:
  using SyntaxError::SyntaxError;
};

// Valid SPARQL outside the supported subset (OPTIONAL, UNION, ORDER BY, ...).
class UnsupportedFeatureError : public ParseError {
 public:
  UnsupportedFeatureError(const std::string& feature, std::size_t line, std::size_t column)
      : ParseError("unsupported feature: " + feature, line, column), feature_(feature) {}

  const std::string& feature() const { return feature_; }

 private:
  std::string feature_;
};

Query parseQuery(std::string_view text);

// Fully expanded IRIs, every operator parenthesized. parseQuery(serialize(q))
// yields q again for any parsed q.
std::string serialize(const Query& query);
std::string serialize(const Expr& expr);
std::string serialize(const PatternTerm& term);
std::string serialize(const TriplePattern& pattern);

}  // namespace hub::sparql
