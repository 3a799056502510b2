#include "hub/relstore/Value.h"

#include "hub/rdf/Lexical.h"

namespace hub::relstore {

namespace {
template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;
}  // namespace

std::string_view toString(ColumnKind kind) {
  switch (kind) {
    case ColumnKind::Text: return "text";
    case ColumnKind::Int64: return "int64";
    case ColumnKind::Float64: return "float64";
    case ColumnKind::Bool: return "bool";
    case ColumnKind::EpochSeconds: return "epoch-seconds";
    case ColumnKind::TextArray: return "text-array";
    case ColumnKind::WktText: return "wkt-text";
  }
  return "?";
}

std::optional<ColumnKind> parseColumnKind(std::string_view name) {
  for (auto kind : {ColumnKind::Text, ColumnKind::Int64, ColumnKind::Float64, ColumnKind::Bool,
                    ColumnKind::EpochSeconds, ColumnKind::TextArray, ColumnKind::WktText}) {
    if (toString(kind) == name) return kind;
  }
  return std::nullopt;
}

bool matchesKind(const Value& v, ColumnKind kind) {
  if (isNull(v)) return true;
  switch (kind) {
    case ColumnKind::Text: return std::holds_alternative<std::string>(v);
    case ColumnKind::Int64:
    case ColumnKind::EpochSeconds: return std::holds_alternative<std::int64_t>(v);
    case ColumnKind::Float64: return std::holds_alternative<double>(v);
    case ColumnKind::Bool: return std::holds_alternative<bool>(v);
    case ColumnKind::TextArray: return std::holds_alternative<TextArray>(v);
    case ColumnKind::WktText: return std::holds_alternative<Wkt>(v);
  }
  return false;
}

std::string describe(const Value& v) {
  return std::visit(
      Overloaded{[](std::monostate) -> std::string { return "NULL"; },
                 [](const std::string& s) { return s; },
                 [](std::int64_t i) { return std::to_string(i); },
                 [](double d) { return rdf::formatDouble(d); },
                 [](bool b) -> std::string { return b ? "true" : "false"; },
                 [](const Timestamp& t) { return rdf::formatDateTime(t.epochSeconds); },
                 [](const TextArray& a) {
                   std::string out = "{";
                   for (std::size_t i = 0; i < a.size(); ++i) {
                     if (i) out += ',';
                     out += a[i];
                   }
                   return out + "}";
                 },
                 [](const Wkt& w) { return w.text; }},
      v);
}

std::string toSqlLiteral(const Value& v) {
  auto quote = [](const std::string& s) {
    std::string out = "'";
    for (char c : s) {
      if (c == '\'') out += '\'';
      out += c;
    }
    return out + "'";
  };
  return std::visit(
      Overloaded{[](std::monostate) -> std::string { return "NULL"; },
                 [&](const std::string& s) { return quote(s); },
                 [](std::int64_t i) { return std::to_string(i); },
                 [](double d) { return rdf::formatDouble(d); },
                 [](bool b) -> std::string { return b ? "TRUE" : "FALSE"; },
                 [&](const Timestamp& t) {
                   return "TIMESTAMP " + quote(rdf::formatDateTime(t.epochSeconds));
                 },
                 [&](const TextArray& a) { return quote(describe(a)); },
                 [&](const Wkt& w) { return quote(w.text); }},
      v);
}

}  // namespace hub::relstore
