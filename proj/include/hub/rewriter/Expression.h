#pragma once

#include <optional>

#include "hub/rdf/Term.h"
#include "hub/rewriter/Solution.h"
#include "hub/sparql/Ast.h"

namespace hub::rewriter {

// Value of `e` under `s`; nullopt on a type error or unbound variable.
std::optional<rdf::Term> evalExpr(const sparql::Expr& e, const Solution& s);

// Effective boolean value; nullopt when it is an error.
std::optional<bool> effectiveBoolean(const rdf::Term& t);

// FILTER semantics: errors count as false.
bool passesFilter(const sparql::Expr& e, const Solution& s);

}  // namespace hub::rewriter
