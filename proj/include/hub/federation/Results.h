#pragma once

#include <optional>
#include <string_view>

#include "hub/Error.h"
#include "hub/rewriter/Solution.h"

namespace hub::federation {

enum class ResultsFormat { Json, Xml };

// Malformed SPARQL results document. Positions are 1-based where the
// underlying parser reports them.
class ResultsError : public SyntaxError {
 public:
  using SyntaxError::SyntaxError;
};

// Picks the format from a Content-Type value; parameters are ignored.
std::optional<ResultsFormat> formatForMediaType(std::string_view mediaType);

// SPARQL 1.1 Query Results in JSON or XML. Literals without a datatype
// become xsd:string. Blank nodes are rejected.
rewriter::SolutionTable parseResults(ResultsFormat format, std::string_view payload);

}  // namespace hub::federation
