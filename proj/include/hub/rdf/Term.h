#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace hub::rdf {

// An RDF term: either an absolute IRI or a literal. Literals always carry a
// datatype; language-tagged literals have datatype rdf:langString.
class Term {
 public:
  enum class Kind : std::uint8_t { Iri, Literal };

  Term() = default;

  static Term iri(std::string iri);
  static Term literal(std::string lexical, std::string_view datatype);
  static Term langLiteral(std::string lexical, std::string language);
  // xsd:string literal.
  static Term string(std::string lexical);

  Kind kind() const { return kind_; }
  bool isIri() const { return kind_ == Kind::Iri; }
  bool isLiteral() const { return kind_ == Kind::Literal; }
  bool hasLanguage() const { return !language_.empty(); }

  // The IRI for IRI terms, the lexical form for literals.
  const std::string& value() const { return value_; }
  const std::string& datatype() const { return datatype_; }
  const std::string& language() const { return language_; }

  // N-Triples / SPARQL surface syntax, always with an explicit datatype.
  std::string toNTriples() const;

  friend auto operator<=>(const Term&, const Term&) = default;
  friend bool operator==(const Term&, const Term&) = default;

 private:
  Kind kind_ = Kind::Iri;
  std::string value_;
  std::string datatype_;
  std::string language_;
};

struct Triple {
  Term subject;
  Term predicate;
  Term object;

  friend auto operator<=>(const Triple&, const Triple&) = default;
  friend bool operator==(const Triple&, const Triple&) = default;
};

using TripleSet = std::set<Triple>;

// Escapes a literal lexical form for N-Triples / SPARQL string syntax.
std::string escapeString(std::string_view s);
// Escapes characters not permitted inside <...>.
std::string escapeIri(std::string_view s);

std::string toString(const Triple& t);

}  // namespace hub::rdf

template <>
struct std::hash<hub::rdf::Term> {
  std::size_t operator()(const hub::rdf::Term& t) const noexcept {
    std::size_t h = std::hash<std::string>{}(t.value());
    h ^= std::hash<std::string>{}(t.datatype()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= std::hash<std::string>{}(t.language()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h ^ static_cast<std::size_t>(t.kind());
  }
};
