#include "hub/mappings/Template.h"

#include <cmath>
#include <cstdio>
#include <functional>

#include "hub/rdf/Lexical.h"
#include "hub/rdf/Vocabulary.h"

namespace hub::mappings {

namespace xsd = vocab::xsd;
using relstore::Value;

namespace {

bool isUnreserved(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' ||
         c == '.' || c == '_' || c == '~';
}

std::string renderSegments(const std::vector<Segment>& segments) {
  std::string out;
  for (const auto& s : segments) out += s.isPlaceholder() ? "{" + s.text + "}" : s.text;
  return out;
}

}  // namespace

TermTemplate TermTemplate::iri(std::string iri) {
  TermTemplate t;
  t.kind = Kind::ConstantIri;
  t.constant = std::move(iri);
  return t;
}

std::vector<std::size_t> TermTemplate::placeholders() const {
  std::vector<std::size_t> out;
  for (const auto& s : segments) {
    if (s.isPlaceholder()) out.push_back(*s.projection);
  }
  return out;
}

std::string TermTemplate::toString() const {
  switch (kind) {
    case Kind::ConstantIri: return "<" + constant + ">";
    case Kind::IriTemplate: return "<" + renderSegments(segments) + ">";
    case Kind::Literal: return "\"" + renderSegments(segments) + "\"^^<" + datatype + ">";
  }
  return {};
}

std::string TripleTemplate::toString() const {
  return subject.toString() + " <" + predicate + "> " + object.toString() + " .";
}

std::string percentEncode(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (isUnreserved(c)) {
      out += c;
    } else {
      char buf[4];
      std::snprintf(buf, sizeof(buf), "%%%02X", static_cast<unsigned char>(c));
      out += buf;
    }
  }
  return out;
}

std::optional<std::string> percentDecode(std::string_view s) {
  auto hexValue = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '%') {
      out += s[i];
      continue;
    }
    if (i + 2 >= s.size()) return std::nullopt;
    int hi = hexValue(s[i + 1]);
    int lo = hexValue(s[i + 2]);
    if (hi < 0 || lo < 0) return std::nullopt;
    out += static_cast<char>(hi * 16 + lo);
    i += 2;
  }
  return out;
}

std::optional<std::string> lexicalFor(const Value& value, std::string_view datatype) {
  const bool isString = datatype == xsd::kString;
  if (const auto* s = std::get_if<std::string>(&value)) {
    if (rdf::isValidLexical(*s, datatype)) return *s;
    return std::nullopt;
  }
  if (const auto* i = std::get_if<std::int64_t>(&value)) {
    if (datatype == xsd::kInteger || isString) return std::to_string(*i);
    if (datatype == xsd::kDouble || datatype == xsd::kDecimal || datatype == xsd::kFloat) {
      return rdf::formatDouble(static_cast<double>(*i));
    }
    return std::nullopt;
  }
  if (const auto* d = std::get_if<double>(&value)) {
    if (datatype == xsd::kDouble || datatype == xsd::kFloat || isString) {
      return rdf::formatDouble(*d);
    }
    if (datatype == xsd::kDecimal && std::isfinite(*d)) return rdf::formatDouble(*d);
    if (datatype == xsd::kInteger && std::isfinite(*d) && std::trunc(*d) == *d &&
        std::fabs(*d) < 9.2e18) {
      return std::to_string(static_cast<std::int64_t>(*d));
    }
    return std::nullopt;
  }
  if (const auto* b = std::get_if<bool>(&value)) {
    if (datatype == xsd::kBoolean || isString) return std::string(*b ? "true" : "false");
    return std::nullopt;
  }
  if (const auto* t = std::get_if<relstore::Timestamp>(&value)) {
    if (datatype == xsd::kDateTime || isString) return rdf::formatDateTime(t->epochSeconds);
    return std::nullopt;
  }
  if (const auto* w = std::get_if<relstore::Wkt>(&value)) {
    if (isString) return w->text;
    return std::nullopt;
  }
  if (std::holds_alternative<relstore::TextArray>(value) && isString) {
    return relstore::describe(value);
  }
  return std::nullopt;
}

std::optional<Value> valueFor(std::string_view lexical, relstore::ColumnKind kind) {
  using relstore::ColumnKind;
  switch (kind) {
    case ColumnKind::Text: return Value{std::string(lexical)};
    case ColumnKind::Int64:
    case ColumnKind::EpochSeconds:
      if (auto v = rdf::parseInteger(lexical)) return Value{*v};
      return std::nullopt;
    case ColumnKind::Float64:
      if (auto v = rdf::parseDouble(lexical)) return Value{*v};
      return std::nullopt;
    case ColumnKind::Bool:
      if (lexical == "true") return Value{true};
      if (lexical == "false") return Value{false};
      return std::nullopt;
    case ColumnKind::WktText: return Value{relstore::Wkt{std::string(lexical)}};
    case ColumnKind::TextArray: return std::nullopt;
  }
  return std::nullopt;
}

std::optional<rdf::Term> expandTerm(const TermTemplate& t, const relstore::Row& row) {
  if (t.kind == TermTemplate::Kind::ConstantIri) return rdf::Term::iri(t.constant);
  std::string text;
  for (const auto& s : t.segments) {
    if (!s.isPlaceholder()) {
      text += s.text;
      continue;
    }
    const Value& v = row.at(*s.projection);
    if (relstore::isNull(v)) return std::nullopt;
    if (t.kind == TermTemplate::Kind::IriTemplate) {
      text += percentEncode(relstore::describe(v));
    } else {
      // A lone placeholder renders in the literal's datatype; placeholders
      // embedded in surrounding text render as strings.
      auto lexical = lexicalFor(v, t.segments.size() == 1 ? std::string_view(t.datatype)
                                                          : std::string_view(xsd::kString));
      if (!lexical) return std::nullopt;
      text += *lexical;
    }
  }
  if (t.kind == TermTemplate::Kind::IriTemplate) return rdf::Term::iri(std::move(text));
  if (!rdf::isValidLexical(text, t.datatype)) return std::nullopt;
  return rdf::Term::literal(std::move(text), t.datatype);
}

std::optional<rdf::Triple> expandTemplate(const TripleTemplate& t, const relstore::Row& row) {
  auto subject = expandTerm(t.subject, row);
  if (!subject) return std::nullopt;
  auto object = expandTerm(t.object, row);
  if (!object) return std::nullopt;
  return rdf::Triple{std::move(*subject), rdf::Term::iri(t.predicate), std::move(*object)};
}

std::optional<std::vector<std::pair<std::size_t, std::string>>> matchTerm(const TermTemplate& t,
                                                                         const rdf::Term& term) {
  using Captures = std::vector<std::pair<std::size_t, std::string>>;
  if (t.kind == TermTemplate::Kind::ConstantIri) {
    if (term.isIri() && term.value() == t.constant) return Captures{};
    return std::nullopt;
  }
  const bool iri = t.kind == TermTemplate::Kind::IriTemplate;
  if (iri != term.isIri()) return std::nullopt;
  if (!iri && (term.hasLanguage() || term.datatype() != t.datatype)) return std::nullopt;

  const std::string& value = term.value();
  Captures captures;
  // Backtracking match of segments against value[pos..].
  std::function<bool(std::size_t, std::size_t)> match = [&](std::size_t seg,
                                                            std::size_t pos) -> bool {
    if (seg == t.segments.size()) return pos == value.size();
    const Segment& s = t.segments[seg];
    if (!s.isPlaceholder()) {
      if (value.compare(pos, s.text.size(), s.text) != 0) return false;
      return match(seg + 1, pos + s.text.size());
    }
    std::size_t end = pos;
    std::size_t limit = value.size();
    if (iri) {
      while (end < value.size() && (isUnreserved(value[end]) || value[end] == '%')) ++end;
      limit = end;
    }
    for (std::size_t stop = limit + 1; stop-- > pos;) {
      std::string raw = value.substr(pos, stop - pos);
      std::optional<std::string> decoded = iri ? percentDecode(raw) : std::optional(raw);
      if (!decoded) continue;
      // A placeholder used twice must capture the same value.
      bool consistent = true;
      for (const auto& [projection, text] : captures) {
        if (projection == *s.projection && text != *decoded) consistent = false;
      }
      if (!consistent) continue;
      captures.emplace_back(*s.projection, std::move(*decoded));
      if (match(seg + 1, stop)) return true;
      captures.pop_back();
    }
    return false;
  };
  if (!match(0, 0)) return std::nullopt;
  return captures;
}

}  // namespace hub::mappings
