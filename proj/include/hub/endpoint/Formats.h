#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "hub/Error.h"
#include "hub/rewriter/Solution.h"

namespace hub::endpoint {

enum class ResultFormat { Html, Xml, Json, Csv, Tsv };

class UnknownFormatError : public Error {
 public:
  explicit UnknownFormatError(const std::string& name) : Error("unknown format '" + name + "'") {}
};

// Accepts the short names (json, xml, csv, tsv, html) and the media types,
// case-insensitively.
std::optional<ResultFormat> parseFormat(std::string_view name);
// The highest-weighted supported type of an Accept header. Wildcards and
// unsupported types yield nullopt.
std::optional<ResultFormat> negotiate(std::string_view accept);

const char* formatName(ResultFormat format);
const char* mediaType(ResultFormat format);

struct FormattedResults {
  std::string body;
  std::string mediaType;
};

// Columns follow table.variables.
FormattedResults formatResults(const rewriter::SolutionTable& table, ResultFormat format);
// Throws UnknownFormatError.
FormattedResults formatResults(const rewriter::SolutionTable& table, std::string_view format);

}  // namespace hub::endpoint
