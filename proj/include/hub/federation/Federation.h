#pragma once

#include <chrono>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hub/Error.h"
#include "hub/federation/Endpoint.h"
#include "hub/rewriter/Solution.h"
#include "hub/sparql/Ast.h"

namespace hub::federation {

// Failure of one SERVICE call. The message always names the endpoint IRI.
class ServiceError : public Error {
 public:
  ServiceError(ServiceErrorKind kind, std::string endpoint, const std::string& detail);
  ServiceErrorKind kind() const { return kind_; }
  const std::string& endpoint() const { return endpoint_; }

 private:
  ServiceErrorKind kind_;
  std::string endpoint_;
};

class EndpointRegistry {
 public:
  // Throws hub::Error on a duplicate IRI.
  void add(std::string iri, std::shared_ptr<const Endpoint> endpoint);
  void remove(const std::string& iri);
  const Endpoint* find(const std::string& iri) const;
  std::vector<std::string> iris() const;

  // Target of triple patterns written outside any SERVICE block.
  void setDefault(std::string iri) { default_ = std::move(iri); }
  const std::string& defaultIri() const { return default_; }

 private:
  std::map<std::string, std::shared_ptr<const Endpoint>> entries_;
  std::string default_;
};

struct FederationPolicy {
  bool bindJoin = true;
  std::chrono::milliseconds timeout{10000};
  std::size_t maxSolutions = 100000;  // per call, checked before joining
};

// The block with every variable bound in `s` replaced by its value.
// BOUND over a substituted variable folds to true. Returns nullopt if a
// literal lands in subject or predicate position, as such a pattern can
// never match.
std::optional<std::vector<sparql::ServiceElement>> substitute(
    const std::vector<sparql::ServiceElement>& elements, const rewriter::Solution& s);

// The SELECT sent for a block: its pattern variables over its elements.
sparql::Query subquery(const std::vector<sparql::ServiceElement>& elements);

// Evaluates one SERVICE block against the accumulated bindings. With
// bind-join, the block is sent once per distinct substituted form; without
// it the block is sent once and hash-joined, and filters naming variables
// from outside the block run after the join. An empty `incoming` returns
// empty without contacting the endpoint.
rewriter::SolutionTable executeService(const sparql::Service& block,
                                       const rewriter::SolutionTable& incoming,
                                       const EndpointRegistry& registry,
                                       const FederationPolicy& policy);

// Elements are evaluated left to right. Runs of plain triple patterns go to
// the default endpoint; top-level filters apply to the bindings accumulated
// so far. Projection and DISTINCT come last.
rewriter::SolutionTable evaluateFederated(const sparql::Query& query,
                                          const EndpointRegistry& registry,
                                          const FederationPolicy& policy);

}  // namespace hub::federation
