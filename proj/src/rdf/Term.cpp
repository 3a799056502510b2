#include "hub/rdf/Term.h"

#include <cstdio>

#include "hub/rdf/Vocabulary.h"

namespace hub::rdf {

Term Term::iri(std::string iri) {
  Term t;
  t.kind_ = Kind::Iri;
  t.value_ = std::move(iri);
  return t;
}

Term Term::literal(std::string lexical, std::string_view datatype) {
  Term t;
  t.kind_ = Kind::Literal;
  t.value_ = std::move(lexical);
  t.datatype_ = datatype;
  return t;
}

Term Term::langLiteral(std::string lexical, std::string language) {
  Term t;
  t.kind_ = Kind::Literal;
  t.value_ = std::move(lexical);
  t.datatype_ = vocab::rdf::kLangString;
  // Language tags compare case-insensitively; store them lower-cased.
  for (auto& c : language) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  t.language_ = std::move(language);
  return t;
}

Term Term::string(std::string lexical) { return literal(std::move(lexical), vocab::xsd::kString); }

std::string escapeString(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

std::string escapeIri(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    auto u = static_cast<unsigned char>(c);
    if (u <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' || c == '}' || c == '|' ||
        c == '^' || c == '`' || c == '\\') {
      char buf[8];
      std::snprintf(buf, sizeof(buf), "\\u%04X", u);
      out += buf;
    } else {
      out += c;
    }
  }
  return out;
}

std::string Term::toNTriples() const {
  if (isIri()) return "<" + escapeIri(value_) + ">";
  std::string out = "\"" + escapeString(value_) + "\"";
  if (hasLanguage()) return out + "@" + language_;
  return out + "^^<" + escapeIri(datatype_) + ">";
}

std::string toString(const Triple& t) {
  return t.subject.toNTriples() + " " + t.predicate.toNTriples() + " " + t.object.toNTriples() +
         " .";
}

}  // namespace hub::rdf
