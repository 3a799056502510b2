#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hub/rdf/Term.h"
#include "hub/relstore/Database.h"

namespace hub::mappings {

// Literal text or a {placeholder} resolved to a source projection index.
struct Segment {
  std::string text;  // literal text, or the placeholder name
  std::optional<std::size_t> projection;

  bool isPlaceholder() const { return projection.has_value(); }
  friend bool operator==(const Segment&, const Segment&) = default;
};

struct TermTemplate {
  enum class Kind { ConstantIri, IriTemplate, Literal };

  Kind kind = Kind::ConstantIri;
  std::string constant;           // ConstantIri
  std::vector<Segment> segments;  // IriTemplate, Literal
  std::string datatype;           // Literal

  static TermTemplate iri(std::string iri);

  bool isConstant() const { return kind == Kind::ConstantIri; }
  // Placeholder projection indices in order of appearance.
  std::vector<std::size_t> placeholders() const;
  // Template text with absolute IRIs, e.g. <http://x/feeds/{feed.id}>.
  std::string toString() const;
  friend bool operator==(const TermTemplate&, const TermTemplate&) = default;
};

struct TripleTemplate {
  TermTemplate subject;
  std::string predicate;
  TermTemplate object;

  std::string toString() const;
  friend bool operator==(const TripleTemplate&, const TripleTemplate&) = default;
};

// Percent-encodes everything outside the RFC 3986 unreserved set.
std::string percentEncode(std::string_view s);
std::optional<std::string> percentDecode(std::string_view s);

// Canonical lexical form of a cell value for a literal of `datatype`.
// Returns nullopt if the value cannot be represented in that datatype.
std::optional<std::string> lexicalFor(const relstore::Value& value, std::string_view datatype);

// Parses a lexical form back into a value of the given column kind; used to
// push constants down as SQL equality constraints. Returns nullopt when the
// lexical form is not the canonical rendering of any value of that kind.
std::optional<relstore::Value> valueFor(std::string_view lexical, relstore::ColumnKind kind);

// Instantiates one term; nullopt if a placeholder value is NULL.
std::optional<rdf::Term> expandTerm(const TermTemplate& t, const relstore::Row& row);

// Instantiates the triple template over a result row; nullopt (suppressed)
// when any placeholder value is NULL.
std::optional<rdf::Triple> expandTemplate(const TripleTemplate& t, const relstore::Row& row);

// Inverse template match: the placeholder values (projection index, decoded
// text) that make `t` expand to `term`, or nullopt if no row can produce it.
// For literal templates this succeeds only when the datatype/language agree.
std::optional<std::vector<std::pair<std::size_t, std::string>>> matchTerm(const TermTemplate& t,
                                                                         const rdf::Term& term);

}  // namespace hub::mappings
