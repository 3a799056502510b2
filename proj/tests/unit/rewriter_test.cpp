#include <cstdio>
#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "BgpGenerator.h"
#include "Demo.h"
#include "Oracle.h"
#include "Queries.h"
#include "hub/rdf/Lexical.h"
#include "hub/rdf/Vocabulary.h"
#include "hub/rewriter/Expression.h"
#include "hub/rewriter/Rewriter.h"
#include "hub/sparql/Parser.h"

using namespace hub::rewriter;
using hub::rdf::Term;
using hub::sparql::Expr;
using hub::sparql::parseQuery;
using hub::sparql::TriplePattern;
using hub::sparql::Variable;
namespace xsd = hub::vocab::xsd;

namespace {

const std::string kBt = "http://portal.bt-hypercat.com/ontologies/bt-hypercat#";
const std::string kSensors = "http://api.bt-hypercat.com/sensors/";
const std::string kEvents = "http://api.bt-hypercat.com/events/";
const std::string kType(hub::vocab::rdf::kType);

std::set<std::string> ids(const std::vector<MappingMatch>& matches) {
  std::set<std::string> out;
  for (const auto& m : matches) out.insert(m.mapping->id);
  return out;
}

std::set<Solution> asSet(const SolutionTable& t) {
  return {t.solutions.begin(), t.solutions.end()};
}

std::multiset<Solution> asMultiset(const SolutionTable& t) {
  return {t.solutions.begin(), t.solutions.end()};
}

std::vector<TriplePattern> bgpOf(const hub::sparql::Query& q) {
  std::vector<TriplePattern> out;
  for (const auto& e : q.body) {
    if (const auto* t = std::get_if<TriplePattern>(&e)) out.push_back(*t);
  }
  return out;
}

Solution sol(std::initializer_list<std::pair<const std::string, Term>> items) { return Solution(items); }

}  // namespace

TEST(MatchMappings, FeedClassUsesSubclass) {
  const auto& d = hubtest::demo();
  TriplePattern p{Variable{"s"}, Term::iri(kType), Term::iri(kBt + "Feed")};
  EXPECT_EQ(ids(matchMappings(p, d.ontology, d.sensorsMappings, *d.sensors)),
            std::set<std::string>{"mapping:SensorFeed"});
}

TEST(MatchMappings, DatastreamAcrossBothRegistries) {
  const auto& d = hubtest::demo();
  TriplePattern p{Variable{"s"}, Term::iri(kType), Term::iri(kBt + "Datastream")};
  auto s = ids(matchMappings(p, d.ontology, d.sensorsMappings, *d.sensors));
  auto e = ids(matchMappings(p, d.ontology, d.eventsMappings, *d.events));
  s.merge(e);
  EXPECT_EQ(s, (std::set<std::string>{"mapping:SensorStream", "mapping:EventStream"}));
}

TEST(MatchMappings, ConstantSubjectBecomesConstraint) {
  const auto& d = hubtest::demo();
  TriplePattern p{Term::iri(kSensors + "feeds/f1"), Term::iri(kBt + "feed_title"), Variable{"t"}};
  auto matches = matchMappings(p, d.ontology, d.sensorsMappings, *d.sensors);
  ASSERT_EQ(matches.size(), 1u);
  EXPECT_EQ(matches[0].mapping->id, "mapping:feed_title");
  ASSERT_EQ(matches[0].constraints.size(), 1u);
  EXPECT_EQ(matches[0].constraints[0].column, "id");
  EXPECT_EQ(matches[0].constraints[0].value, hub::relstore::Value{std::string("f1")});
  EXPECT_EQ(matches[0].sql().toSql(), "SELECT feed.id, feed.title FROM feed WHERE feed.id = 'f1'");
  // Constant from the other database's IRI space eliminates the mapping.
  TriplePattern foreign{Term::iri(kEvents + "feeds/e1"), Term::iri(kBt + "feed_title"), Variable{"t"}};
  EXPECT_TRUE(matchMappings(foreign, d.ontology, d.sensorsMappings, *d.sensors).empty());
}

TEST(MatchMappings, UnknownVocabularyIsEmpty) {
  const auto& d = hubtest::demo();
  TriplePattern p{Variable{"s"}, Term::iri("http://x/unknown"), Variable{"o"}};
  EXPECT_TRUE(matchMappings(p, d.ontology, d.sensorsMappings, *d.sensors).empty());
  EXPECT_TRUE(evaluatePattern(p, d.sensorsContext()).solutions.empty());
}

TEST(Bgp, FeedsOnSensors) {
  const auto& d = hubtest::demo();
  auto t = evaluateBgp({{Variable{"s"}, Term::iri(kType), Term::iri(kBt + "Feed")}}, d.sensorsContext());
  EXPECT_EQ(asSet(t), (std::set<Solution>{sol({{"s", Term::iri(kSensors + "feeds/f1")}}),
                                          sol({{"s", Term::iri(kSensors + "feeds/f2")}})}));
}

TEST(Bgp, FeedToDatastreamJoin) {
  const auto& d = hubtest::demo();
  std::vector<TriplePattern> bgp = {
      {Variable{"f"}, Term::iri(kBt + "hasSensorStream"), Variable{"d"}},
      {Variable{"d"}, Term::iri(kBt + "datastream_id"), Variable{"i"}}};
  auto t = evaluateBgp(bgp, d.sensorsContext());
  EXPECT_EQ(t.solutions.size(), 3u);
  EXPECT_EQ(asSet(t), hubtest::oracle::matchBgp(bgp, hubtest::oracle::saturatedGraph(d.sensorsContext())));
}

TEST(Bgp, NoMatchIsEmpty) {
  const auto& d = hubtest::demo();
  std::vector<TriplePattern> bgp = {
      {Variable{"s"}, Term::iri(kType), Term::iri(kBt + "Feed")},
      {Variable{"s"}, Term::iri(kBt + "feed_title"), Term::string("no such title")}};
  auto t = evaluateBgp(bgp, d.sensorsContext());
  EXPECT_TRUE(t.solutions.empty());
  EXPECT_EQ(t.variables, std::vector<std::string>{"s"});
}

TEST(Bgp, BackendErrorNamesPattern) {
  const auto& d = hubtest::demo();
  hub::relstore::Database empty;
  Context ctx{&d.ontology, {{"broken", &d.sensorsMappings, &empty}}};
  try {
    evaluateBgp({{Variable{"s"}, Term::iri(kType), Term::iri(kBt + "Item")},
                 {Variable{"s"}, Term::iri(kBt + "feed_title"), Variable{"t"}}},
                ctx);
    FAIL() << "expected an error";
  } catch (const RewriteError& e) {
    EXPECT_NE(std::string(e.what()).find("pattern 1"), std::string::npos) << e.what();
  }
}

TEST(Expression, BoundingBoxArithmetic) {
  Solution s = sol({{"a", Term::literal("53.40", xsd::kDouble)}, {"b", Term::literal("53.48", xsd::kDouble)}});
  Expr e = Expr::binary(Expr::Op::Gt, Expr::var("a"),
                        Expr::binary(Expr::Op::Sub, Expr::var("b"),
                                     Expr::lit(Term::literal("0.1", xsd::kDecimal))));
  EXPECT_TRUE(passesFilter(e, s));
}

TEST(Expression, BoundAndErrors) {
  Expr bound = Expr::call(Expr::Fn::Bound, {Expr::var("d")});
  EXPECT_FALSE(passesFilter(bound, {}));
  EXPECT_TRUE(passesFilter(bound, sol({{"d", Term::iri("http://x/d")}})));
  // Unbound variable outside BOUND drops the solution, and so does a type error.
  Expr gt = Expr::binary(Expr::Op::Gt, Expr::var("x"), Expr::lit(Term::literal("1", xsd::kInteger)));
  EXPECT_FALSE(passesFilter(gt, {}));
  EXPECT_FALSE(passesFilter(gt, sol({{"x", Term::iri("http://x/a")}})));
  EXPECT_FALSE(passesFilter(Expr::unary(Expr::Op::Not, gt), {}));
  // true || error is true.
  Expr orTrue = Expr::binary(Expr::Op::Or, gt, Expr::lit(Term::literal("true", xsd::kBoolean)));
  EXPECT_TRUE(passesFilter(orTrue, {}));
}

TEST(Expression, YearOfDateTime) {
  Expr e = Expr::cast(std::string(xsd::kInteger),
                      Expr::call(Expr::Fn::Year, {Expr::cast(std::string(xsd::kDateTime),
                                                             Expr::lit(Term::string("2017-07-14T02:40:00Z")))}));
  EXPECT_EQ(evalExpr(e, {}), Term::literal("2017", xsd::kInteger));
}

TEST(Expression, RegexOnStr) {
  Expr e = Expr::call(Expr::Fn::Regex, {Expr::call(Expr::Fn::Str, {Expr::var("t")}),
                                        Expr::lit(Term::string(" Pollutant "))});
  EXPECT_TRUE(passesFilter(e, sol({{"t", Term::string("E-PRTR Pollutant Release data")}})));
  EXPECT_FALSE(passesFilter(e, sol({{"t", Term::string("Pollutant emissions")}})));
  EXPECT_TRUE(passesFilter(e, sol({{"t", Term::langLiteral("The Pollutant Register", "en")}})));
}

TEST(Expression, NumericPromotionAndComparison) {
  auto eval = [](Expr::Op op, Term a, Term b) {
    return evalExpr(Expr::binary(op, Expr::lit(a), Expr::lit(b)), {});
  };
  auto i = [](const char* v) { return Term::literal(v, xsd::kInteger); };
  auto dbl = [](const char* v) { return Term::literal(v, xsd::kDouble); };
  EXPECT_EQ(eval(Expr::Op::Add, i("2"), i("3")), i("5"));
  EXPECT_EQ(eval(Expr::Op::Add, i("2"), dbl("0.5")), dbl("2.5"));
  EXPECT_EQ(eval(Expr::Op::Div, i("1"), i("0")), std::nullopt);
  EXPECT_EQ(eval(Expr::Op::Eq, i("2"), dbl("2.0")), Term::literal("true", xsd::kBoolean));
  EXPECT_EQ(eval(Expr::Op::Lt, Term::literal("2014-05-01T10:00:00Z", xsd::kDateTime),
                 Term::literal("2015-06-15T00:00:00Z", xsd::kDateTime)),
            Term::literal("true", xsd::kBoolean));
  EXPECT_EQ(eval(Expr::Op::Lt, Term::string("a"), i("1")), std::nullopt);
  EXPECT_EQ(eval(Expr::Op::Eq, Term::iri("http://x/a"), Term::iri("http://x/b")),
            Term::literal("false", xsd::kBoolean));
}

TEST(Query, FeedsOnSensors) {
  const auto& d = hubtest::demo();
  auto t = evaluateQuery(parseQuery(hubtest::queries::kFeeds), d.sensorsContext());
  EXPECT_EQ(t.variables, std::vector<std::string>{"s"});
  EXPECT_EQ(asSet(t), (std::set<Solution>{sol({{"s", Term::iri(kSensors + "feeds/f1")}}),
                                          sol({{"s", Term::iri(kSensors + "feeds/f2")}})}));
}

TEST(Query, DatastreamsAcrossBothDatabases) {
  const auto& d = hubtest::demo();
  auto t = evaluateQuery(parseQuery(hubtest::queries::kDatastreams), d.combinedContext());
  std::set<Solution> expected;
  for (const char* s : {"feeds/f1/datastreams/0", "feeds/f1/datastreams/1", "feeds/f2/datastreams/0"}) {
    expected.insert(sol({{"s", Term::iri(kSensors + s)}}));
  }
  for (const char* s : {"feeds/e1/datastreams/0", "feeds/e2/datastreams/0"}) {
    expected.insert(sol({{"s", Term::iri(kEvents + s)}}));
  }
  EXPECT_EQ(t.solutions.size(), 5u);
  EXPECT_EQ(asSet(t), expected);
}

TEST(Query, DistinctCollapsesDuplicateValues) {
  const auto& d = hubtest::demo();
  hub::relstore::Database db;
  db.loadFixture(
      "table feed\ncol id text\ncol title text\ncol lat float64\n"
      "row a\tSame\t21.5\nrow b\tSame\t21.50\nrow c\tOther\t3\n");
  auto reg = hub::mappings::parseMappingDocument(
      "prefix bt-sensors: <http://api.bt-hypercat.com/sensors/>\n"
      "prefix bt-hypercat: <http://portal.bt-hypercat.com/ontologies/bt-hypercat#>\n"
      "prefix xsd: <http://www.w3.org/2001/XMLSchema#>\n"
      "mappingId m:title\n"
      "target bt-sensors:feeds/{feed.id} bt-hypercat:feed_title \"{feed.title}\"^^xsd:string .\n"
      "source SELECT feed.id, feed.title FROM feed\n");
  Context ctx{&d.ontology, {{"t", &reg, &db}}};
  const char* q = "PREFIX h: <http://portal.bt-hypercat.com/ontologies/bt-hypercat#>\n"
                  "SELECT %s ?t WHERE { ?f h:feed_title ?t }";
  char buf[256];
  std::snprintf(buf, sizeof(buf), q, "");
  EXPECT_EQ(evaluateQuery(parseQuery(buf), ctx).solutions.size(), 3u);
  std::snprintf(buf, sizeof(buf), q, "DISTINCT");
  EXPECT_EQ(evaluateQuery(parseQuery(buf), ctx).solutions.size(), 2u);
}

TEST(Query, ServiceIsRejected) {
  const auto& d = hubtest::demo();
  EXPECT_THROW(evaluateQuery(parseQuery(hubtest::queries::kBusStops), d.sensorsContext()),
               hub::sparql::UnsupportedFeatureError);
}

TEST(Query, FiltersOnDatapoints) {
  const auto& d = hubtest::demo();
  auto q = parseQuery(
      "PREFIX h: <http://portal.bt-hypercat.com/ontologies/bt-hypercat#>\n"
      "SELECT ?d WHERE { ?d a h:Datapoint . ?d h:datapoint_western_longitude ?w ."
      " ?d h:datapoint_at_time ?at FILTER(?w > -2.28) FILTER(?at > \"2017-09-02T00:10:00Z\"^^<"
      "http://www.w3.org/2001/XMLSchema#dateTime>) }");
  auto t = evaluateQuery(q, d.sensorsContext());
  // Oracle: hand-coded predicates over the saturated graph.
  std::set<Solution> expected;
  for (const auto& b : hubtest::oracle::matchBgp(bgpOf(q), hubtest::oracle::saturatedGraph(d.sensorsContext()))) {
    double w = *hub::rdf::parseDouble(b.at("w").value());
    auto at = hub::rdf::parseDateTime(b.at("at").value())->epochSeconds;
    if (w > -2.28 && at > 1504311000) expected.insert(sol({{"d", b.at("d")}}));
  }
  EXPECT_EQ(asSet(t), expected);
  EXPECT_EQ(expected.size(), 2u);  // dp2 and dp6
}

TEST(Explain, ListsMappingsAndSql) {
  const auto& d = hubtest::demo();
  std::string text = explain(parseQuery(hubtest::queries::kFeeds), d.combinedContext());
  EXPECT_NE(text.find("sensors mapping:SensorFeed"), std::string::npos) << text;
  EXPECT_NE(text.find("events mapping:EventFeed"), std::string::npos) << text;
  EXPECT_NE(text.find("SELECT feed.id FROM feed"), std::string::npos) << text;
}

TEST(OracleEquivalence, RandomBgpsMatchSaturatedGraph) {
  const auto& d = hubtest::demo();
  for (const auto& ctx : {d.sensorsContext(), d.eventsContext(), d.combinedContext()}) {
    auto graph = hubtest::oracle::saturatedGraph(ctx);
    hubtest::BgpGenerator gen(static_cast<unsigned>(ctx.sources.size() * 101 + ctx.sources[0].name.size()),
                     graph, d.ontology);
    for (int i = 0; i < 150; ++i) {
      auto bgp = gen.bgp();
      auto actual = evaluateBgp(bgp, ctx);
      auto expected = hubtest::oracle::matchBgp(bgp, graph);
      ASSERT_EQ(asSet(actual), expected) << "iteration " << i;
      ASSERT_EQ(actual.solutions.size(), expected.size()) << "duplicates in iteration " << i;
    }
  }
}

TEST(OracleEquivalence, ExampleQueryCorpus) {
  const auto& d = hubtest::demo();
  const auto& corpus = hubtest::queries::kCorpus;
  for (const auto& ctx : {d.sensorsContext(), d.eventsContext(), d.combinedContext()}) {
    auto graph = hubtest::oracle::saturatedGraph(ctx);
    for (const char* text : corpus) {
      auto q = parseQuery(text);
      auto actual = evaluateQuery(q, ctx);
      auto full = hubtest::oracle::matchBgp(bgpOf(q), graph);
      std::multiset<Solution> expected;
      for (const auto& b : full) {
        Solution p;
        for (const auto& v : q.resultVariables()) {
          if (b.count(v)) p.emplace(v, b.at(v));
        }
        expected.insert(p);
      }
      if (q.distinct) {
        std::set<Solution> unique(expected.begin(), expected.end());
        expected = std::multiset<Solution>(unique.begin(), unique.end());
      }
      EXPECT_EQ(asMultiset(actual), expected) << text;
    }
  }
}

TEST(Properties, SubsumptionSoundness) {
  const auto& d = hubtest::demo();
  auto ctx = d.combinedContext();
  for (const auto& c : d.ontology.classes()) {
    auto above = asSet(evaluatePattern({Variable{"s"}, Term::iri(kType), Term::iri(c)}, ctx));
    for (const auto& sub : d.ontology.subclassesOf(c)) {
      for (const auto& s : evaluatePattern({Variable{"s"}, Term::iri(kType), Term::iri(sub)}, ctx).solutions) {
        EXPECT_TRUE(above.count(s)) << sub << " under " << c;
      }
    }
  }
}

TEST(Properties, PatternOrderDoesNotChangeResults) {
  const auto& d = hubtest::demo();
  auto ctx = d.combinedContext();
  hubtest::BgpGenerator gen(77, hubtest::oracle::saturatedGraph(ctx), d.ontology);
  for (int i = 0; i < 80; ++i) {
    auto bgp = gen.bgp();
    auto base = asSet(evaluateBgp(bgp, ctx));
    std::sort(bgp.begin(), bgp.end(), [](const TriplePattern& a, const TriplePattern& b) {
      return hub::sparql::serialize(a) < hub::sparql::serialize(b);
    });
    do {
      ASSERT_EQ(asSet(evaluateBgp(bgp, ctx)), base);
    } while (std::next_permutation(bgp.begin(), bgp.end(), [](const TriplePattern& a, const TriplePattern& b) {
      return hub::sparql::serialize(a) < hub::sparql::serialize(b);
    }));
  }
}

TEST(Properties, AddingFilterNeverAddsSolutions) {
  const auto& d = hubtest::demo();
  auto ctx = d.sensorsContext();
  const char* base =
      "PREFIX h: <http://portal.bt-hypercat.com/ontologies/bt-hypercat#>\n"
      "SELECT ?d ?w ?n WHERE { ?d h:datapoint_western_longitude ?w ; h:datapoint_northern_latitude ?n %s }";
  const char* filters[] = {"FILTER(?w > -2.3)", "FILTER(?n < 53.6)", "FILTER(?w + 1 > ?n - 55)",
                           "FILTER(BOUND(?zz))", "FILTER(?w = -2.3 || ?n > 53.7)", "FILTER(!(?w < -2))",
                           "FILTER(str(?d) = \"x\")"};
  char buf[512];
  std::snprintf(buf, sizeof(buf), base, "");
  auto all = asSet(evaluateQuery(parseQuery(buf), ctx));
  std::mt19937 rng(5);
  for (int i = 0; i < 40; ++i) {
    std::string chosen;
    std::set<Solution> previous = all;
    for (int k = 0; k < 3; ++k) {
      chosen += std::string(" ") + filters[rng() % 7];
      std::snprintf(buf, sizeof(buf), base, chosen.c_str());
      auto now = asSet(evaluateQuery(parseQuery(buf), ctx));
      ASSERT_TRUE(std::includes(previous.begin(), previous.end(), now.begin(), now.end())) << chosen;
      previous = now;
    }
  }
}
