#pragma once

#include <chrono>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hub/Error.h"
#include "hub/rdf/Term.h"
#include "hub/rewriter/Rewriter.h"
#include "hub/rewriter/Solution.h"
#include "hub/sparql/Ast.h"

namespace hub::federation {

enum class ServiceErrorKind {
  UnknownEndpoint,
  Transport,  // connection could not be made or broke
  HttpStatus,  // remote answered with a non-200 status
  Timeout,
  MalformedResults,
  TooManySolutions,
  Evaluation,  // an in-process endpoint failed
};

const char* toString(ServiceErrorKind kind);

// Raised by endpoints, which do not know the IRI they are registered under.
class EndpointError : public Error {
 public:
  EndpointError(ServiceErrorKind kind, const std::string& detail) : Error(detail), kind_(kind) {}
  ServiceErrorKind kind() const { return kind_; }

 private:
  ServiceErrorKind kind_;
};

// Something that answers SERVICE-free SELECT queries.
class Endpoint {
 public:
  virtual ~Endpoint() = default;
  // Only remote endpoints honor the timeout.
  virtual rewriter::SolutionTable select(const sparql::Query& query,
                                         std::chrono::milliseconds timeout) const = 0;
};

// In-process SPARQL-to-SQL endpoint over one or more databases.
class RewriterEndpoint : public Endpoint {
 public:
  explicit RewriterEndpoint(rewriter::Context ctx) : ctx_(std::move(ctx)) {}
  rewriter::SolutionTable select(const sparql::Query& query,
                                 std::chrono::milliseconds timeout) const override;
  const rewriter::Context& context() const { return ctx_; }

 private:
  rewriter::Context ctx_;
};

// In-process endpoint over a fixed set of triples; stands in for the
// external linked-data endpoints.
//
// A pattern whose object is a collection, such as
//   ?a omgeo:nearby (?lat ?long "50mi")
// matches a stored literal whose lexical form is the space-separated list of
// the collection items. Bound items compare by lexical form; unbound ones
// bind to xsd:string tokens.
class GraphEndpoint : public Endpoint {
 public:
  explicit GraphEndpoint(const rdf::TripleSet& triples);
  rewriter::SolutionTable select(const sparql::Query& query,
                                 std::chrono::milliseconds timeout) const override;
  std::size_t size() const { return triples_.size(); }

 private:
  std::vector<rdf::Triple> candidates(const sparql::TriplePattern& pattern,
                                      const rewriter::Solution& s) const;

  std::vector<rdf::Triple> triples_;
  std::map<rdf::Term, std::vector<std::size_t>> bySubject_;
  std::map<rdf::Term, std::vector<std::size_t>> byPredicate_;
};

// SPARQL protocol client. Sends GET with the `query` parameter and prefers
// JSON results, falling back to XML.
class RemoteEndpoint : public Endpoint {
 public:
  explicit RemoteEndpoint(std::string url);
  rewriter::SolutionTable select(const sparql::Query& query,
                                 std::chrono::milliseconds timeout) const override;
  const std::string& url() const { return url_; }

 private:
  std::string url_;
  std::string origin_;  // scheme://host:port
  std::string path_;
};

}  // namespace hub::federation
