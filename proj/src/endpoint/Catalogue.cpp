#include "hub/endpoint/Catalogue.h"

#include <map>
#include <set>

#include "json.hpp"

#include "hub/rdf/Vocabulary.h"

namespace hub::endpoint {

using rdf::Term;
using sparql::TriplePattern;
using sparql::Variable;

namespace {

const std::string kDatastreamId = std::string(vocab::hypercat::kNamespace) + "datastream_id";

// Pairs (?a, ?b) of `?a <predicate> ?b`.
std::vector<std::pair<Term, Term>> pairs(const rewriter::Context& ctx, std::string_view predicate) {
  auto table = rewriter::evaluatePattern(
      TriplePattern{Variable{"a"}, Term::iri(std::string(predicate)), Variable{"b"}}, ctx);
  std::vector<std::pair<Term, Term>> out;
  for (auto& s : table.solutions) out.emplace_back(s.at("a"), s.at("b"));
  return out;
}

struct Items {
  std::map<std::string, std::string> cls;  // href -> most specific class
  std::set<std::string> feeds;
};

Items collectItems(const rewriter::Context& ctx) {
  const auto& onto = *ctx.ontology;
  std::map<std::string, std::set<std::string>> types;
  for (const auto& [s, c] : pairs(ctx, vocab::rdf::kType)) {
    if (s.isIri() && c.isIri()) types[s.value()].insert(c.value());
  }
  Items items;
  for (const auto& [href, classes] : types) {
    const bool feed = classes.count(std::string(vocab::hypercat::kFeed)) > 0;
    const bool stream = classes.count(std::string(vocab::hypercat::kDatastream)) > 0;
    if (!feed && !stream) continue;
    if (feed) items.feeds.insert(href);
    // Most specific: no other asserted class lies strictly below it.
    std::string best;
    for (const auto& c : classes) {
      bool specific = true;
      for (const auto& other : classes) {
        if (other != c && onto.superclassesOf(other).count(c)) {
          specific = false;
          break;
        }
      }
      if (specific && (best.empty() || c < best)) best = c;
    }
    items.cls[href] = best;
  }
  return items;
}

// Feed to datastream links through any object property.
std::vector<rdf::Triple> links(const rewriter::Context& ctx, const Items& items) {
  std::vector<rdf::Triple> out;
  const auto& onto = *ctx.ontology;
  const auto streamClasses = onto.subclassesOf(vocab::hypercat::kDatastream);
  for (const auto& [p, kind] : onto.properties()) {
    if (kind != ontology::PropertyKind::Object) continue;
    for (const auto& [f, d] : pairs(ctx, p)) {
      auto it = items.cls.find(d.value());
      if (items.feeds.count(f.value()) && it != items.cls.end() && streamClasses.count(it->second)) {
        out.push_back({f, Term::iri(p), d});
      }
    }
  }
  return out;
}

}  // namespace

CatalogueDoc buildCatalogue(const rewriter::Context& ctx) {
  CatalogueDoc doc;
  doc.metadata = {{std::string(kContentTypeRel), std::string(kCatalogueMediaType)},
                  {std::string(kDescriptionRel), std::string(kCatalogueDescription)}};
  if (ctx.sources.empty()) return doc;

  const Items items = collectItems(ctx);
  std::map<std::string, std::string> titles;
  for (const auto& [s, t] : pairs(ctx, vocab::hypercat::kFeedTitle)) titles.emplace(s.value(), t.value());
  std::map<std::string, std::string> ids;
  for (const auto& [s, i] : pairs(ctx, kDatastreamId)) ids.emplace(s.value(), i.value());
  std::map<std::string, std::string> feedOf;
  for (const auto& t : links(ctx, items)) feedOf.emplace(t.object.value(), t.subject.value());

  for (const auto& [href, cls] : items.cls) {
    std::string description;
    if (items.feeds.count(href)) {
      auto t = titles.find(href);
      description = t != titles.end() ? t->second : "Feed " + href;
    } else {
      auto i = ids.find(href);
      description = "Datastream " + (i != ids.end() ? i->second : href);
      auto f = feedOf.find(href);
      if (f != feedOf.end()) {
        auto t = titles.find(f->second);
        description += " of " + (t != titles.end() ? t->second : f->second);
      }
    }
    doc.items.push_back({href,
                         {{std::string(kContentTypeRel), std::string(kItemMediaType)},
                          {std::string(kDescriptionRel), description},
                          {std::string(vocab::rdf::kType), cls}}});
  }
  return doc;
}

std::string toJson(const CatalogueDoc& doc) {
  auto relations = [](const std::vector<Relation>& rels) {
    auto out = nlohmann::ordered_json::array();
    for (const auto& r : rels) out.push_back({{"rel", r.rel}, {"val", r.val}});
    return out;
  };
  nlohmann::ordered_json j;
  j["catalogue-metadata"] = relations(doc.metadata);
  j["items"] = nlohmann::ordered_json::array();
  for (const auto& item : doc.items) {
    j["items"].push_back({{"href", item.href}, {"item-metadata", relations(item.metadata)}});
  }
  return j.dump(2, ' ', false, nlohmann::ordered_json::error_handler_t::replace);
}

rdf::TripleSet buildCatalogueRdf(const rewriter::Context& ctx) {
  rdf::TripleSet out;
  if (ctx.sources.empty()) return out;
  const Items items = collectItems(ctx);
  const Term type = Term::iri(std::string(vocab::rdf::kType));
  for (const auto& [href, cls] : items.cls) out.insert({Term::iri(href), type, Term::iri(cls)});
  for (auto& t : links(ctx, items)) out.insert(std::move(t));
  return out;
}

}  // namespace hub::endpoint
