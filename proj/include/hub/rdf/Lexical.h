#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "hub/rdf/Term.h"

// Parsing and canonical rendering of the XSD lexical spaces the hub uses.
namespace hub::rdf {

struct DateTime {
  // Seconds since the Unix epoch, normalized to UTC. Values without a
  // timezone are treated as UTC.
  std::int64_t epochSeconds = 0;
  double fraction = 0.0;
  // Calendar year as written, before timezone normalization.
  std::int64_t year = 1970;
  bool hasTimezone = false;

  friend bool operator==(const DateTime& a, const DateTime& b) {
    return a.epochSeconds == b.epochSeconds && a.fraction == b.fraction;
  }
  friend bool operator<(const DateTime& a, const DateTime& b) {
    return a.epochSeconds != b.epochSeconds ? a.epochSeconds < b.epochSeconds
                                            : a.fraction < b.fraction;
  }
};

std::optional<std::int64_t> parseInteger(std::string_view s);
// Accepts the xsd:double and xsd:decimal lexical spaces.
std::optional<double> parseDouble(std::string_view s);
std::optional<bool> parseBoolean(std::string_view s);
std::optional<DateTime> parseDateTime(std::string_view s);

// Shortest decimal form that round-trips.
std::string formatDouble(double value);
// "YYYY-MM-DDThh:mm:ssZ".
std::string formatDateTime(std::int64_t epochSeconds);

bool isNumericDatatype(std::string_view datatype);

// Checks the lexical form for xsd:integer, xsd:double, xsd:decimal,
// xsd:boolean and xsd:dateTime. Other datatypes are accepted as is.
bool isValidLexical(std::string_view lexical, std::string_view datatype);

// Maps a literal to its canonical lexical form so that "21.50"^^xsd:double
// and "21.5"^^xsd:double become the same term. IRIs and non-numeric
// literals are returned unchanged.
Term canonicalize(const Term& term);

}  // namespace hub::rdf
