#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hub/rdf/Term.h"

namespace hub::rewriter {

// Partial map from variable name to term.
using Solution = std::map<std::string, rdf::Term>;

struct SolutionTable {
  std::vector<std::string> variables;  // in scope, ordered
  std::vector<Solution> solutions;

  // The table with one empty solution; identity of join.
  static SolutionTable unit();

  friend bool operator==(const SolutionTable&, const SolutionTable&) = default;
};

// True if a and b agree on every variable bound in both.
bool compatible(const Solution& a, const Solution& b);

// Natural join. Hash join on the shared variables when they are bound in
// every solution, nested loop otherwise. Left order is preserved.
SolutionTable join(const SolutionTable& left, const SolutionTable& right);

// Restricts each solution to `variables`. With `distinct`, drops solutions
// equal to an earlier one after canonicalizing literal values.
SolutionTable project(const SolutionTable& table, const std::vector<std::string>& variables,
                      bool distinct);

// Removes exact duplicates, keeping first occurrences.
void deduplicate(SolutionTable& table);

}  // namespace hub::rewriter
