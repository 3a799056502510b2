#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hub/Error.h"
#include "hub/rdf/Term.h"

namespace hub::rdf {

class NTriplesError : public SyntaxError {
 public:
  using SyntaxError::SyntaxError;
};

// One "<s> <p> <o> ." line per triple, in set order.
std::string serializeNTriples(const TripleSet& triples);

// Parses N-Triples. Comments and blank lines are skipped. Blank nodes are
// not supported. Typed literals of the core XSD types are validated.
// Throws NTriplesError with the offending line number.
TripleSet parseNTriples(std::string_view text);

// Like parseNTriples but keeps document order and duplicates.
std::vector<Triple> parseNTriplesOrdered(std::string_view text);

}  // namespace hub::rdf
