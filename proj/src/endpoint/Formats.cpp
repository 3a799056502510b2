#include "hub/endpoint/Formats.h"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>

#include "json.hpp"

#include "hub/rdf/Vocabulary.h"
#include "hub/sparql/Parser.h"

namespace hub::endpoint {

using rdf::Term;
using rewriter::SolutionTable;

namespace {

struct FormatInfo {
  ResultFormat format;
  const char* name;
  const char* mediaType;
};

constexpr FormatInfo kFormats[] = {
    {ResultFormat::Html, "html", "text/html"},
    {ResultFormat::Xml, "xml", "application/sparql-results+xml"},
    {ResultFormat::Json, "json", "application/sparql-results+json"},
    {ResultFormat::Csv, "csv", "text/csv"},
    {ResultFormat::Tsv, "tsv", "text/tab-separated-values"},
};

std::string trimLower(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool plainString(const Term& t) {
  return t.isLiteral() && !t.hasLanguage() && t.datatype() == vocab::xsd::kString;
}

std::string xmlEscape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\r': out += "&#13;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string json(const SolutionTable& table) {
  nlohmann::ordered_json doc;
  doc["head"]["vars"] = table.variables;
  auto bindings = nlohmann::ordered_json::array();
  for (const auto& s : table.solutions) {
    auto b = nlohmann::ordered_json::object();
    for (const auto& v : table.variables) {
      auto it = s.find(v);
      if (it == s.end()) continue;
      const Term& t = it->second;
      nlohmann::ordered_json term;
      if (t.isIri()) {
        term["type"] = "uri";
        term["value"] = t.value();
      } else {
        term["type"] = "literal";
        term["value"] = t.value();
        if (t.hasLanguage()) {
          term["xml:lang"] = t.language();
        } else if (!plainString(t)) {
          term["datatype"] = t.datatype();
        }
      }
      b[v] = std::move(term);
    }
    bindings.push_back(std::move(b));
  }
  doc["results"]["bindings"] = std::move(bindings);
  return doc.dump(-1, ' ', false, nlohmann::ordered_json::error_handler_t::replace);
}

std::string xml(const SolutionTable& table) {
  std::string out =
      "<?xml version=\"1.0\"?>\n"
      "<sparql xmlns=\"http://www.w3.org/2005/sparql-results#\">\n"
      "  <head>\n";
  for (const auto& v : table.variables) out += "    <variable name=\"" + xmlEscape(v) + "\"/>\n";
  out += "  </head>\n  <results>\n";
  for (const auto& s : table.solutions) {
    out += "    <result>\n";
    for (const auto& v : table.variables) {
      auto it = s.find(v);
      if (it == s.end()) continue;
      const Term& t = it->second;
      out += "      <binding name=\"" + xmlEscape(v) + "\">";
      if (t.isIri()) {
        out += "<uri>" + xmlEscape(t.value()) + "</uri>";
      } else if (t.hasLanguage()) {
        out += "<literal xml:lang=\"" + xmlEscape(t.language()) + "\">" + xmlEscape(t.value()) +
               "</literal>";
      } else if (plainString(t)) {
        out += "<literal>" + xmlEscape(t.value()) + "</literal>";
      } else {
        out += "<literal datatype=\"" + xmlEscape(t.datatype()) + "\">" + xmlEscape(t.value()) +
               "</literal>";
      }
      out += "</binding>\n";
    }
    out += "    </result>\n";
  }
  out += "  </results>\n</sparql>\n";
  return out;
}

std::string csvField(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv(const SolutionTable& table) {
  std::string out;
  for (std::size_t i = 0; i < table.variables.size(); ++i) {
    if (i) out += ',';
    out += csvField(table.variables[i]);
  }
  out += "\r\n";
  for (const auto& s : table.solutions) {
    for (std::size_t i = 0; i < table.variables.size(); ++i) {
      if (i) out += ',';
      auto it = s.find(table.variables[i]);
      if (it != s.end()) out += csvField(it->second.value());
    }
    out += "\r\n";
  }
  return out;
}

std::string tsv(const SolutionTable& table) {
  std::string out;
  for (std::size_t i = 0; i < table.variables.size(); ++i) {
    if (i) out += '\t';
    out += "?" + table.variables[i];
  }
  out += "\n";
  for (const auto& s : table.solutions) {
    for (std::size_t i = 0; i < table.variables.size(); ++i) {
      if (i) out += '\t';
      auto it = s.find(table.variables[i]);
      if (it != s.end()) out += sparql::serialize(sparql::PatternTerm(it->second));
    }
    out += "\n";
  }
  return out;
}

std::string html(const SolutionTable& table) {
  std::string out =
      "<!DOCTYPE html>\n<html>\n<head><meta charset=\"utf-8\"><title>SPARQL results</title>"
      "</head>\n<body>\n<table class=\"sparql-results\">\n<thead><tr>";
  for (const auto& v : table.variables) out += "<th>" + xmlEscape(v) + "</th>";
  out += "</tr></thead>\n<tbody>\n";
  for (const auto& s : table.solutions) {
    out += "<tr>";
    for (const auto& v : table.variables) {
      auto it = s.find(v);
      out += "<td>";
      if (it != s.end()) {
        const Term& t = it->second;
        if (t.isIri()) {
          out += "<a href=\"" + xmlEscape(t.value()) + "\">" + xmlEscape(t.value()) + "</a>";
        } else {
          out += xmlEscape(sparql::serialize(sparql::PatternTerm(t)));
        }
      }
      out += "</td>";
    }
    out += "</tr>\n";
  }
  out += "</tbody>\n</table>\n</body>\n</html>\n";
  return out;
}

}  // namespace

std::optional<ResultFormat> parseFormat(std::string_view name) {
  const std::string key = trimLower(name.substr(0, name.find(';')));
  for (const auto& f : kFormats) {
    if (key == f.name || key == f.mediaType) return f.format;
  }
  if (key == "application/json") return ResultFormat::Json;
  if (key == "application/xml" || key == "text/xml") return ResultFormat::Xml;
  return std::nullopt;
}

std::optional<ResultFormat> negotiate(std::string_view accept) {
  std::optional<ResultFormat> best;
  double bestQ = 0.0;
  std::size_t start = 0;
  while (start <= accept.size()) {
    std::size_t end = accept.find(',', start);
    if (end == std::string_view::npos) end = accept.size();
    std::string_view item = accept.substr(start, end - start);
    start = end + 1;

    double q = 1.0;
    std::size_t semi = item.find(';');
    std::string_view type = item.substr(0, semi);
    while (semi != std::string_view::npos) {
      std::size_t next = item.find(';', semi + 1);
      std::string param = trimLower(item.substr(semi + 1, next - semi - 1));
      if (param.rfind("q=", 0) == 0) q = std::strtod(param.c_str() + 2, nullptr);
      semi = next;
    }
    auto format = parseFormat(type);
    // Short names are not media types.
    if (format && trimLower(type).find('/') == std::string::npos) format.reset();
    if (format && q > bestQ) {
      best = format;
      bestQ = q;
    }
  }
  return best;
}

const char* formatName(ResultFormat format) {
  for (const auto& f : kFormats) {
    if (f.format == format) return f.name;
  }
  return "";
}

const char* mediaType(ResultFormat format) {
  for (const auto& f : kFormats) {
    if (f.format == format) return f.mediaType;
  }
  return "";
}

FormattedResults formatResults(const SolutionTable& table, ResultFormat format) {
  std::string body;
  switch (format) {
    case ResultFormat::Json: body = json(table); break;
    case ResultFormat::Xml: body = xml(table); break;
    case ResultFormat::Csv: body = csv(table); break;
    case ResultFormat::Tsv: body = tsv(table); break;
    case ResultFormat::Html: body = html(table); break;
  }
  return {std::move(body), mediaType(format)};
}

FormattedResults formatResults(const SolutionTable& table, std::string_view format) {
  auto f = parseFormat(format);
  if (!f) throw UnknownFormatError(std::string(format));
  return formatResults(table, *f);
}

}  // namespace hub::endpoint
