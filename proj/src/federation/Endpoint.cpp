#include "hub/federation/Endpoint.h"

#include <regex>
#include <sstream>

#include "httplib.h"

#include "hub/federation/Results.h"
#include "hub/rewriter/Expression.h"
#include "hub/sparql/Parser.h"

namespace hub::federation {

using rdf::Term;
using rewriter::Solution;
using rewriter::SolutionTable;
using sparql::Collection;
using sparql::PatternTerm;
using sparql::TriplePattern;
using sparql::Variable;

const char* toString(ServiceErrorKind kind) {
  switch (kind) {
    case ServiceErrorKind::UnknownEndpoint: return "unknown endpoint";
    case ServiceErrorKind::Transport: return "transport failure";
    case ServiceErrorKind::HttpStatus: return "HTTP error";
    case ServiceErrorKind::Timeout: return "timeout";
    case ServiceErrorKind::MalformedResults: return "malformed results";
    case ServiceErrorKind::TooManySolutions: return "too many solutions";
    case ServiceErrorKind::Evaluation: return "evaluation failure";
  }
  return "error";
}

namespace {

void requireNoService(const sparql::Query& query) {
  if (query.hasService()) {
    throw sparql::UnsupportedFeatureError("SERVICE inside a forwarded query", 0, 0);
  }
}

}  // namespace

SolutionTable RewriterEndpoint::select(const sparql::Query& query,
                                       std::chrono::milliseconds) const {
  return rewriter::evaluateQuery(query, ctx_);
}

// --- GraphEndpoint ---------------------------------------------------------

GraphEndpoint::GraphEndpoint(const rdf::TripleSet& triples)
    : triples_(triples.begin(), triples.end()) {
  for (std::size_t i = 0; i < triples_.size(); ++i) {
    bySubject_[triples_[i].subject].push_back(i);
    byPredicate_[triples_[i].predicate].push_back(i);
  }
}

namespace {

// The term at a position under `s`, if it is fixed.
const Term* resolve(const PatternTerm& t, const Solution& s) {
  if (const auto* term = std::get_if<Term>(&t)) return term;
  if (const auto* v = std::get_if<Variable>(&t)) {
    auto it = s.find(v->name);
    if (it != s.end()) return &it->second;
  }
  return nullptr;
}

bool matchPosition(const PatternTerm& p, const Term& value, Solution& s) {
  if (const auto* term = std::get_if<Term>(&p)) return *term == value;
  if (const auto* v = std::get_if<Variable>(&p)) {
    auto [it, inserted] = s.emplace(v->name, value);
    return inserted || it->second == value;
  }
  const auto& items = std::get<Collection>(p).items;
  if (!value.isLiteral()) return false;
  std::istringstream in(value.value());
  std::vector<std::string> tokens;
  for (std::string tok; in >> tok;) tokens.push_back(tok);
  if (tokens.size() != items.size()) return false;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (const auto* term = std::get_if<Term>(&items[i])) {
      if (term->value() != tokens[i]) return false;
      continue;
    }
    const auto& name = std::get<Variable>(items[i]).name;
    auto it = s.find(name);
    if (it == s.end()) {
      s.emplace(name, Term::string(tokens[i]));
    } else if (it->second.value() != tokens[i]) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::vector<rdf::Triple> GraphEndpoint::candidates(const TriplePattern& pattern,
                                                   const Solution& s) const {
  const std::vector<std::size_t>* index = nullptr;
  if (const Term* subject = resolve(pattern.subject, s)) {
    auto it = bySubject_.find(*subject);
    if (it == bySubject_.end()) return {};
    index = &it->second;
  } else if (const Term* predicate = resolve(pattern.predicate, s)) {
    auto it = byPredicate_.find(*predicate);
    if (it == byPredicate_.end()) return {};
    index = &it->second;
  }
  if (!index) return triples_;
  std::vector<rdf::Triple> out;
  out.reserve(index->size());
  for (std::size_t i : *index) out.push_back(triples_[i]);
  return out;
}

SolutionTable GraphEndpoint::select(const sparql::Query& query, std::chrono::milliseconds) const {
  requireNoService(query);
  std::vector<Solution> current{Solution{}};
  std::vector<const sparql::Expr*> filters;
  for (const auto& element : query.body) {
    if (const auto* f = std::get_if<sparql::Filter>(&element)) {
      filters.push_back(&f->expr);
      continue;
    }
    const auto& pattern = std::get<TriplePattern>(element);
    std::vector<Solution> next;
    for (const auto& s : current) {
      for (const auto& t : candidates(pattern, s)) {
        Solution extended = s;
        if (matchPosition(pattern.subject, t.subject, extended) &&
            matchPosition(pattern.predicate, t.predicate, extended) &&
            matchPosition(pattern.object, t.object, extended)) {
          next.push_back(std::move(extended));
        }
      }
    }
    current = std::move(next);
  }

  SolutionTable table;
  table.variables = query.patternVariables();
  for (auto& s : current) {
    bool keep = true;
    for (const auto* f : filters) {
      if (!rewriter::passesFilter(*f, s)) {
        keep = false;
        break;
      }
    }
    if (keep) table.solutions.push_back(std::move(s));
  }
  return rewriter::project(table, query.resultVariables(), query.distinct);
}

// --- RemoteEndpoint --------------------------------------------------------

RemoteEndpoint::RemoteEndpoint(std::string url) : url_(std::move(url)) {
  static const std::regex kUrl(R"(^(https?://[^/?#]+)(/[^?#]*)?$)", std::regex::icase);
  std::smatch m;
  if (!std::regex_match(url_, m, kUrl)) throw Error("invalid endpoint URL '" + url_ + "'");
  origin_ = m[1].str();
  path_ = m[2].matched && m[2].length() > 0 ? m[2].str() : "/";
}

SolutionTable RemoteEndpoint::select(const sparql::Query& query,
                                     std::chrono::milliseconds timeout) const {
  requireNoService(query);
  if (origin_.compare(0, 8, "https://") == 0 || origin_.compare(0, 8, "HTTPS://") == 0) {
    throw EndpointError(ServiceErrorKind::Transport, "https is not supported: " + url_);
  }
  httplib::Client client(origin_);
  const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(timeout);
  const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(timeout - seconds);
  client.set_connection_timeout(seconds.count(), micros.count());
  client.set_read_timeout(seconds.count(), micros.count());
  client.set_write_timeout(seconds.count(), micros.count());

  httplib::Headers headers{
      {"Accept", "application/sparql-results+json, application/sparql-results+xml;q=0.9"}};
  const auto started = std::chrono::steady_clock::now();
  auto res = client.Get(path_, httplib::Params{{"query", sparql::serialize(query)}}, headers);
  if (!res) {
    const auto err = res.error();
    const bool late = std::chrono::steady_clock::now() - started >= timeout;
    if (err == httplib::Error::ConnectionTimeout ||
        ((err == httplib::Error::Read || err == httplib::Error::Write) && late)) {
      throw EndpointError(ServiceErrorKind::Timeout,
                          "no answer from " + url_ + " within " +
                              std::to_string(timeout.count()) + " ms");
    }
    throw EndpointError(ServiceErrorKind::Transport, url_ + ": " + httplib::to_string(err));
  }
  if (res->status != 200) {
    std::string body = res->body.substr(0, 300);
    throw EndpointError(ServiceErrorKind::HttpStatus,
                        "HTTP " + std::to_string(res->status) + " from " + url_ +
                            (body.empty() ? "" : ": " + body));
  }
  auto format = formatForMediaType(res->get_header_value("Content-Type"));
  if (!format) {
    throw EndpointError(ServiceErrorKind::MalformedResults,
                        "unexpected content type '" + res->get_header_value("Content-Type") +
                            "' from " + url_);
  }
  try {
    return parseResults(*format, res->body);
  } catch (const ResultsError& e) {
    throw EndpointError(ServiceErrorKind::MalformedResults, e.what());
  }
}

}  // namespace hub::federation
