#include "hub/federation/Results.h"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <string>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "json.hpp"

namespace hub::federation {

using rdf::Term;
using rewriter::Solution;
using rewriter::SolutionTable;

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

// Line and column of a byte offset.
std::pair<std::size_t, std::size_t> position(std::string_view text, std::size_t offset) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

Term makeTerm(const std::string& type, const std::string& value, const std::string* datatype,
              const std::string* language) {
  if (type == "uri") return Term::iri(value);
  if (type == "literal" || type == "typed-literal") {
    if (language && !language->empty()) return Term::langLiteral(value, *language);
    if (datatype && !datatype->empty()) return Term::literal(value, *datatype);
    return Term::string(value);
  }
  if (type == "bnode") throw ResultsError("blank nodes are not supported", 0);
  throw ResultsError("unknown term type '" + type + "'", 0);
}

void declare(SolutionTable& table, std::set<std::string>& declared, const std::string& name) {
  if (name.empty()) throw ResultsError("empty variable name", 0);
  if (declared.insert(name).second) table.variables.push_back(name);
}

SolutionTable parseJson(std::string_view payload) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(payload);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, column] = position(payload, e.byte > 0 ? e.byte - 1 : 0);
    std::string what = e.what();
    auto cut = what.find("parse error");
    throw ResultsError(cut == std::string::npos ? what : what.substr(cut), line, column);
  }
  if (!doc.is_object()) throw ResultsError("results document is not an object", 0);
  if (doc.contains("boolean")) throw ResultsError("boolean results are not supported", 0);

  SolutionTable table;
  std::set<std::string> declared;
  const auto head = doc.find("head");
  if (head == doc.end() || !head->is_object()) throw ResultsError("missing head", 0);
  const auto vars = head->find("vars");
  if (vars == head->end() || !vars->is_array()) throw ResultsError("missing head.vars", 0);
  for (const auto& v : *vars) {
    if (!v.is_string()) throw ResultsError("head.vars entry is not a string", 0);
    declare(table, declared, v.get<std::string>());
  }

  const auto results = doc.find("results");
  if (results == doc.end() || !results->is_object()) throw ResultsError("missing results", 0);
  const auto bindings = results->find("bindings");
  if (bindings == results->end() || !bindings->is_array()) {
    throw ResultsError("missing results.bindings", 0);
  }
  std::size_t index = 0;
  for (const auto& b : *bindings) {
    ++index;
    const std::string where = "binding " + std::to_string(index) + ": ";
    if (!b.is_object()) throw ResultsError(where + "not an object", 0);
    Solution s;
    for (const auto& [name, value] : b.items()) {
      if (!declared.count(name)) throw ResultsError(where + "undeclared variable " + name, 0);
      if (!value.is_object()) throw ResultsError(where + name + " is not an object", 0);
      auto field = [&](const char* key) -> const std::string* {
        auto it = value.find(key);
        if (it == value.end()) return nullptr;
        if (!it->is_string()) throw ResultsError(where + name + "." + key + " is not a string", 0);
        return it->get_ptr<const std::string*>();
      };
      const std::string* type = field("type");
      const std::string* text = field("value");
      if (!type || !text) throw ResultsError(where + name + " lacks type or value", 0);
      try {
        s.emplace(name, makeTerm(*type, *text, field("datatype"), field("xml:lang")));
      } catch (const ResultsError& e) {
        throw ResultsError(where + e.what(), 0);
      }
    }
    table.solutions.push_back(std::move(s));
  }
  return table;
}

namespace pt = boost::property_tree;

const std::string* attribute(const pt::ptree& node, const char* name) {
  auto attrs = node.get_child_optional("<xmlattr>");
  if (!attrs) return nullptr;
  auto it = attrs->find(name);
  if (it == attrs->not_found()) return nullptr;
  return &it->second.data();
}

SolutionTable parseXml(std::string_view payload) {
  pt::ptree doc;
  try {
    std::istringstream in{std::string(payload)};
    pt::read_xml(in, doc);
  } catch (const pt::xml_parser_error& e) {
    throw ResultsError(e.message(), e.line());
  }
  auto root = doc.get_child_optional("sparql");
  if (!root) throw ResultsError("missing sparql element", 0);
  if (root->get_child_optional("boolean")) throw ResultsError("boolean results are not supported", 0);

  SolutionTable table;
  std::set<std::string> declared;
  auto head = root->get_child_optional("head");
  if (!head) throw ResultsError("missing head", 0);
  for (const auto& [tag, node] : *head) {
    if (tag != "variable") continue;
    const std::string* name = attribute(node, "name");
    if (!name) throw ResultsError("variable without name", 0);
    declare(table, declared, *name);
  }

  auto results = root->get_child_optional("results");
  if (!results) throw ResultsError("missing results", 0);
  std::size_t index = 0;
  for (const auto& [tag, result] : *results) {
    if (tag != "result") continue;
    ++index;
    const std::string where = "result " + std::to_string(index) + ": ";
    Solution s;
    for (const auto& [btag, binding] : result) {
      if (btag != "binding") continue;
      const std::string* name = attribute(binding, "name");
      if (!name) throw ResultsError(where + "binding without name", 0);
      if (!declared.count(*name)) throw ResultsError(where + "undeclared variable " + *name, 0);
      bool found = false;
      for (const auto& [ttag, term] : binding) {
        if (ttag == "<xmlattr>" || ttag == "<xmlcomment>") continue;
        if (found) throw ResultsError(where + *name + " has more than one term", 0);
        found = true;
        try {
          s.emplace(*name, makeTerm(ttag, term.data(), attribute(term, "datatype"),
                                    attribute(term, "xml:lang")));
        } catch (const ResultsError& e) {
          throw ResultsError(where + e.what(), 0);
        }
      }
      if (!found) throw ResultsError(where + *name + " has no term", 0);
    }
    table.solutions.push_back(std::move(s));
  }
  return table;
}

}  // namespace

std::optional<ResultsFormat> formatForMediaType(std::string_view mediaType) {
  std::string type = lower(mediaType.substr(0, mediaType.find(';')));
  while (!type.empty() && std::isspace(static_cast<unsigned char>(type.back()))) type.pop_back();
  if (type == "application/sparql-results+json" || type == "application/json") {
    return ResultsFormat::Json;
  }
  if (type == "application/sparql-results+xml" || type == "application/xml" ||
      type == "text/xml") {
    return ResultsFormat::Xml;
  }
  return std::nullopt;
}

SolutionTable parseResults(ResultsFormat format, std::string_view payload) {
  return format == ResultsFormat::Json ? parseJson(payload) : parseXml(payload);
}

}  // namespace hub::federation
