#include "hub/mappings/Registry.h"

#include <cctype>

#include "hub/rdf/Vocabulary.h"

namespace hub::mappings {

namespace xsd = vocab::xsd;

bool MappingDefinition::isTypeMapping() const {
  return target.predicate == vocab::rdf::kType && target.object.isConstant();
}

void MappingRegistry::addPrefix(std::string name, std::string iri) {
  prefixes_[std::move(name)] = std::move(iri);
}

void MappingRegistry::add(MappingDefinition mapping) {
  if (byId_.count(mapping.id)) throw MappingError("duplicate mapping id '" + mapping.id + "'");
  mappings_.push_back(std::move(mapping));
  reindex();
}

void MappingRegistry::reindex() {
  byPredicate_.clear();
  byClass_.clear();
  byId_.clear();
  for (std::size_t i = 0; i < mappings_.size(); ++i) {
    const auto& m = mappings_[i];
    byId_[m.id] = i;
    byPredicate_[m.target.predicate].push_back(i);
    if (m.isTypeMapping()) byClass_[m.typeClass()].push_back(i);
  }
}

const MappingDefinition* MappingRegistry::find(std::string_view id) const {
  auto it = byId_.find(id);
  return it == byId_.end() ? nullptr : &mappings_[it->second];
}

std::vector<const MappingDefinition*> MappingRegistry::byPredicate(
    std::string_view predicate) const {
  std::vector<const MappingDefinition*> out;
  if (auto it = byPredicate_.find(predicate); it != byPredicate_.end()) {
    for (auto i : it->second) out.push_back(&mappings_[i]);
  }
  return out;
}

std::vector<const MappingDefinition*> MappingRegistry::byClass(std::string_view cls) const {
  std::vector<const MappingDefinition*> out;
  if (auto it = byClass_.find(cls); it != byClass_.end()) {
    for (auto i : it->second) out.push_back(&mappings_[i]);
  }
  return out;
}

namespace {

// Whether a projection of this shape can render as a literal of `datatype`.
bool compatible(relstore::SqlFunction fn, relstore::ColumnKind kind, std::string_view datatype) {
  using relstore::ColumnKind;
  using relstore::SqlFunction;
  if (datatype == xsd::kString) return true;
  if (fn == SqlFunction::ToTimestamp) return datatype == xsd::kDateTime;
  if (fn == SqlFunction::Unnest || fn == SqlFunction::StAsText) return false;
  switch (kind) {
    case ColumnKind::Text: return true;
    case ColumnKind::Int64:
      return datatype == xsd::kInteger || datatype == xsd::kDouble || datatype == xsd::kDecimal;
    case ColumnKind::Float64:
      return datatype == xsd::kDouble || datatype == xsd::kDecimal || datatype == xsd::kFloat;
    case ColumnKind::Bool: return datatype == xsd::kBoolean;
    default: return false;
  }
}

}  // namespace

void MappingRegistry::validate(const relstore::Backend& backend) const {
  for (const auto& m : mappings_) {
    try {
      backend.validate(m.source);
    } catch (const Error& e) {
      throw MappingError("mapping " + m.id + ": " + e.what());
    }
    const auto& object = m.target.object;
    if (object.kind != TermTemplate::Kind::Literal || object.segments.size() != 1) continue;
    auto schema = backend.schema(m.source.table);
    const auto& projection = m.source.projections[*object.segments.front().projection];
    auto kind = schema->columns[*schema->columnIndex(projection.column)].kind;
    if (!compatible(projection.function, kind, object.datatype)) {
      throw MappingError("mapping " + m.id + ": column '" + projection.column + "' (" +
                         std::string(relstore::toString(kind)) + ") cannot be rendered as <" +
                         object.datatype + ">");
    }
  }
}

namespace {

class DocumentParser {
 public:
  explicit DocumentParser(std::string_view text) : text_(text) {}

  MappingRegistry parse() {
    while (nextLine()) {
      auto [directive, rest] = splitDirective(line_);
      if (directive == "prefix") {
        parsePrefix(rest);
      } else if (directive == "mappingId") {
        parseBlock(rest);
      } else {
        fail("expected 'prefix' or 'mappingId', got '" + std::string(directive) + "'");
      }
    }
    return std::move(registry_);
  }

 private:
  [[noreturn]] void fail(const std::string& msg, std::size_t column = 0) const {
    throw MappingSyntaxError(msg, lineNo_, column);
  }

  // Advances to the next non-blank, non-comment line.
  bool nextLine() {
    while (pos_ <= text_.size()) {
      if (pos_ == text_.size()) {
        pos_ = text_.size() + 1;
        return false;
      }
      std::size_t end = text_.find('\n', pos_);
      if (end == std::string_view::npos) end = text_.size();
      line_ = text_.substr(pos_, end - pos_);
      pos_ = end + 1;
      ++lineNo_;
      if (!line_.empty() && line_.back() == '\r') line_.remove_suffix(1);
      auto first = line_.find_first_not_of(" \t");
      if (first == std::string_view::npos || line_[first] == '#') continue;
      line_ = line_.substr(first);
      return true;
    }
    return false;
  }

  static std::pair<std::string_view, std::string_view> splitDirective(std::string_view line) {
    auto sep = line.find_first_of(" \t");
    if (sep == std::string_view::npos) return {line, {}};
    auto rest = line.substr(sep + 1);
    auto first = rest.find_first_not_of(" \t");
    rest = first == std::string_view::npos ? std::string_view{} : rest.substr(first);
    while (!rest.empty() && (rest.back() == ' ' || rest.back() == '\t')) rest.remove_suffix(1);
    return {line.substr(0, sep), rest};
  }

  void parsePrefix(std::string_view rest) {
    auto colon = rest.find(':');
    if (colon == std::string_view::npos) fail("expected 'prefix <name>: <iri>'");
    std::string name(rest.substr(0, colon));
    auto iri = rest.substr(colon + 1);
    auto first = iri.find_first_not_of(" \t");
    if (first == std::string_view::npos) fail("prefix IRI missing");
    iri = iri.substr(first);
    if (iri.front() == '<') {
      if (iri.back() != '>') fail("unterminated IRI in prefix declaration");
      iri = iri.substr(1, iri.size() - 2);
    }
    registry_.addPrefix(std::move(name), std::string(iri));
  }

  std::string_view expectLine(std::string_view directive) {
    if (!nextLine()) fail("unexpected end of document, expected '" + std::string(directive) + "'");
    auto [d, rest] = splitDirective(line_);
    if (d != directive) fail("expected '" + std::string(directive) + "' line");
    return rest;
  }

  void parseBlock(std::string_view idText) {
    if (idText.empty()) fail("mapping id missing");
    std::size_t idLine = lineNo_;
    MappingDefinition m;
    m.id = std::string(idText);

    auto targetText = expectLine("target");
    std::size_t targetLine = lineNo_;
    auto tokens = tokenizeTarget(targetText);

    auto sourceText = expectLine("source");
    std::size_t sourceLine = lineNo_;
    m.sourceText = std::string(sourceText);
    try {
      m.source = relstore::parseSql(sourceText);
    } catch (const SyntaxError& e) {
      fail("mapping " + m.id + ": invalid source SQL: " + e.what());
    }

    lineNo_ = targetLine;
    if (tokens.size() != 4 || tokens[3] != ".") {
      fail("target must be '<subject> <predicate> <object> .'");
    }
    m.target.subject = parseTerm(tokens[0], m, /*allowLiteral=*/false);
    if (tokens[1] == "a") {
      m.target.predicate = vocab::rdf::kType;
    } else {
      auto predicate = parseTerm(tokens[1], m, false);
      if (!predicate.isConstant()) fail("predicate must be a constant IRI");
      m.target.predicate = predicate.constant;
    }
    m.target.object = parseTerm(tokens[2], m, /*allowLiteral=*/true);

    lineNo_ = idLine;
    try {
      registry_.add(std::move(m));
    } catch (const MappingError& e) {
      fail(e.what());
    }
    lineNo_ = sourceLine;
  }

  std::vector<std::string> tokenizeTarget(std::string_view s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
      if (s[i] == ' ' || s[i] == '\t') {
        ++i;
        continue;
      }
      std::size_t start = i;
      bool inQuote = false;
      bool inIri = false;
      while (i < s.size()) {
        char c = s[i];
        if (inQuote) {
          if (c == '\\') ++i;
          else if (c == '"') inQuote = false;
        } else if (inIri) {
          if (c == '>') inIri = false;
        } else if (c == '"') {
          inQuote = true;
        } else if (c == '<') {
          inIri = true;
        } else if (c == ' ' || c == '\t') {
          break;
        }
        ++i;
      }
      if (inQuote || inIri) fail("unterminated token in target", start + 1);
      out.emplace_back(s.substr(start, i - start));
    }
    return out;
  }

  std::string expandPrefixed(std::string_view token) {
    if (token.size() >= 2 && token.front() == '<' && token.back() == '>') {
      return std::string(token.substr(1, token.size() - 2));
    }
    auto colon = token.find(':');
    if (colon == std::string_view::npos) fail("expected IRI or prefixed name, got '" + std::string(token) + "'");
    std::string prefix(token.substr(0, colon));
    auto it = registry_.prefixes().find(prefix);
    if (it == registry_.prefixes().end()) fail("unknown prefix '" + prefix + ":'");
    return it->second + std::string(token.substr(colon + 1));
  }

  // Resolves {name} against the source projections.
  std::size_t resolvePlaceholder(const std::string& name, const MappingDefinition& m) {
    const auto& projections = m.source.projections;
    auto dot = name.find('.');
    for (std::size_t i = 0; i < projections.size(); ++i) {
      const auto& p = projections[i];
      if (dot != std::string::npos) {
        if (p.alias.empty() && p.function == relstore::SqlFunction::None &&
            name.substr(0, dot) == m.source.table && name.substr(dot + 1) == p.column) {
          return i;
        }
      } else if (p.outputName() == name) {
        return i;
      }
    }
    fail("mapping " + m.id + ": placeholder {" + name + "} is not a projection of the source");
  }

  std::vector<Segment> segments(std::string_view text, const MappingDefinition& m) {
    std::vector<Segment> out;
    std::size_t i = 0;
    while (i < text.size()) {
      auto open = text.find('{', i);
      if (open == std::string_view::npos) {
        out.push_back(Segment{std::string(text.substr(i)), std::nullopt});
        break;
      }
      if (open > i) out.push_back(Segment{std::string(text.substr(i, open - i)), std::nullopt});
      auto close = text.find('}', open);
      if (close == std::string_view::npos) fail("unterminated placeholder");
      std::string name(text.substr(open + 1, close - open - 1));
      out.push_back(Segment{name, resolvePlaceholder(name, m)});
      i = close + 1;
    }
    return out;
  }

  TermTemplate parseTerm(const std::string& token, const MappingDefinition& m, bool allowLiteral) {
    TermTemplate t;
    if (token.front() == '"') {
      if (!allowLiteral) fail("literal not allowed in this position");
      auto close = token.rfind('"');
      if (close == 0) fail("unterminated literal");
      std::string body = token.substr(1, close - 1);
      std::string suffix = token.substr(close + 1);
      if (suffix.rfind("^^", 0) != 0) fail("literal template needs a datatype: \"...\"^^xsd:type");
      t.kind = TermTemplate::Kind::Literal;
      t.datatype = expandPrefixed(suffix.substr(2));
      t.segments = segments(body, m);
      return t;
    }
    if (token.front() == '{') fail("bare placeholder object; write \"{col}\"^^xsd:type");
    std::string iri = expandPrefixed(token);
    if (iri.find('{') == std::string::npos) return TermTemplate::iri(std::move(iri));
    t.kind = TermTemplate::Kind::IriTemplate;
    t.segments = segments(iri, m);
    return t;
  }

  std::string_view text_;
  std::string_view line_;
  std::size_t pos_ = 0;
  std::size_t lineNo_ = 0;
  MappingRegistry registry_;
};

}  // namespace

MappingRegistry parseMappingDocument(std::string_view text) { return DocumentParser(text).parse(); }

rdf::TripleSet materialize(const MappingDefinition& mapping, const relstore::Backend& backend) {
  rdf::TripleSet out;
  relstore::ResultSet rows;
  try {
    rows = backend.execute(mapping.source);
  } catch (const Error& e) {
    throw MappingError("mapping " + mapping.id + ": " + e.what());
  }
  for (const auto& row : rows.rows) {
    if (auto triple = expandTemplate(mapping.target, row)) out.insert(std::move(*triple));
  }
  return out;
}

rdf::TripleSet materializeAll(const MappingRegistry& registry, const relstore::Backend& backend) {
  rdf::TripleSet out;
  for (const auto& m : registry.mappings()) out.merge(materialize(m, backend));
  return out;
}

}  // namespace hub::mappings
