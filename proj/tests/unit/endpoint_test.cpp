#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <regex>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "json.hpp"

#include "Demo.h"
#include "Oracle.h"
#include "Queries.h"
#include "hub/endpoint/Catalogue.h"
#include "hub/endpoint/Config.h"
#include "hub/endpoint/Formats.h"
#include "hub/endpoint/Hub.h"
#include "hub/endpoint/Server.h"
#include "hub/federation/Results.h"
#include "hub/rdf/NTriples.h"
#include "hub/rdf/Vocabulary.h"
#include "hub/sparql/Parser.h"

using namespace hub::endpoint;
using hub::rdf::Term;
using hub::rewriter::Solution;
using hub::rewriter::SolutionTable;
namespace fs = std::filesystem;

namespace {

const std::string kBt = "http://portal.bt-hypercat.com/ontologies/bt-hypercat#";
const std::string kXsd(hub::vocab::xsd::kNamespace);
const std::string kFeedQuery =
    "PREFIX h: <http://portal.bt-hypercat.com/ontologies/bt-hypercat#> SELECT ?s WHERE { ?s a h:Feed }";

std::set<Solution> asSet(const SolutionTable& t) { return {t.solutions.begin(), t.solutions.end()}; }

HubConfig demoConfig() { return loadConfig(hubtest::sourcePath("data/hub.json")); }

// Parses results the way a client would, with the federation reader.
SolutionTable reparse(const FormattedResults& r) {
  auto f = hub::federation::formatForMediaType(r.mediaType);
  if (!f) throw std::runtime_error("not a results media type: " + r.mediaType);
  return hub::federation::parseResults(*f, r.body);
}

// Random tables over awkward terms.
class TableGenerator {
 public:
  explicit TableGenerator(unsigned seed) : rng_(seed) {}

  SolutionTable table() {
    SolutionTable t;
    for (int i = 0, n = 1 + pick(4); i < n; ++i) t.variables.push_back("v" + std::to_string(i));
    for (int r = 0, n = pick(6); r < n; ++r) {
      Solution s;
      for (const auto& v : t.variables) {
        if (pick(5) == 0) continue;  // unbound
        s.emplace(v, term());
      }
      t.solutions.push_back(std::move(s));
    }
    return t;
  }

 private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  std::string text() {
    static const char* pieces[] = {"a", " ", "<", ">", "&", "\"", "'", ",", "\t", "\n", "é", "Road", "\\", "]]>"};
    std::string out;
    for (int i = 0, n = pick(6); i < n; ++i) out += pieces[pick(14)];
    return out;
  }

  Term term() {
    switch (pick(5)) {
      case 0: return Term::iri("http://example.org/x/" + std::to_string(pick(1000)) + "?a=1&b=2");
      case 1: return Term::string(text());
      case 2: return Term::langLiteral(text(), pick(2) ? "en" : "en-gb");
      case 3: return Term::literal(std::to_string(pick(2000) - 1000), kXsd + "integer");
      default: return Term::literal("2017-0" + std::to_string(1 + pick(9)) + "-01T00:00:00Z", kXsd + "dateTime");
    }
  }

  std::mt19937 rng_;
};

std::string firstLine(const std::string& s) { return s.substr(0, s.find_first_of("\r\n")); }

// A Hub served on a free port for the life of the object.
class LiveHub {
 public:
  explicit LiveHub(HubConfig cfg) : hub_(std::move(cfg)), server_(hub_) {
    server_.bind("127.0.0.1", 0);
    thread_ = std::thread([this] { server_.run(); });
    client_ = std::make_unique<httplib::Client>("127.0.0.1", server_.port());
    client_->set_read_timeout(30);
    // Wait for the listener.
    for (int i = 0; i < 200 && !client_->Get("/"); ++i) std::this_thread::sleep_for(std::chrono::milliseconds(10));
  }
  ~LiveHub() {
    server_.stop();
    thread_.join();
  }

  httplib::Client& client() { return *client_; }
  const Hub& hub() const { return hub_; }

 private:
  Hub hub_;
  Server server_;
  std::thread thread_;
  std::unique_ptr<httplib::Client> client_;
};

LiveHub& demoServer() {
  static LiveHub live(demoConfig());
  return live;
}

}  // namespace

// --- formats -------------------------------------------------------------------

TEST(Formats, EmptyCsvIsHeaderOnly) {
  SolutionTable t{{"s"}, {}};
  auto out = formatResults(t, ResultFormat::Csv);
  EXPECT_EQ(out.body, "s\r\n");
  EXPECT_EQ(out.mediaType, "text/csv");
}

TEST(Formats, JsonShape) {
  SolutionTable t{{"s", "n", "l"},
                  {{{"s", Term::iri("http://x/a")},
                    {"n", Term::literal("5", kXsd + "integer")},
                    {"l", Term::langLiteral("Active", "en")}},
                   {{"s", Term::iri("http://x/b")}}}};
  auto doc = nlohmann::json::parse(formatResults(t, "json").body);
  EXPECT_EQ(doc["head"]["vars"], nlohmann::json({"s", "n", "l"}));
  ASSERT_EQ(doc["results"]["bindings"].size(), 2u);
  const auto& b = doc["results"]["bindings"][0];
  EXPECT_EQ(b["s"], nlohmann::json({{"type", "uri"}, {"value", "http://x/a"}}));
  EXPECT_EQ(b["n"]["datatype"], kXsd + "integer");
  EXPECT_EQ(b["l"]["xml:lang"], "en");
  EXPECT_FALSE(doc["results"]["bindings"][1].contains("n"));
}

TEST(Formats, CsvQuotesAndTsvUsesTermSyntax) {
  SolutionTable t{{"b", "a"},
                  {{{"a", Term::string("x,\"y\"")}, {"b", Term::iri("http://x/1")}},
                   {{"a", Term::langLiteral("Active", "en")}}}};
  EXPECT_EQ(formatResults(t, ResultFormat::Csv).body, "b,a\r\nhttp://x/1,\"x,\"\"y\"\"\"\r\n,Active\r\n");
  EXPECT_EQ(formatResults(t, ResultFormat::Tsv).body,
            "?b\t?a\n<http://x/1>\t\"x,\\\"y\\\"\"\n\t\"Active\"@en\n");
}

TEST(Formats, HtmlEscapes) {
  SolutionTable t{{"s"}, {{{"s", Term::string("<b>&")}}}};
  auto out = formatResults(t, ResultFormat::Html);
  EXPECT_EQ(out.mediaType, "text/html");
  EXPECT_NE(out.body.find("&lt;b&gt;&amp;"), std::string::npos);
  EXPECT_EQ(out.body.find("<b>&"), std::string::npos);
}

TEST(Formats, RandomTablesRoundTrip) {
  TableGenerator gen(20170904);
  for (int i = 0; i < 300; ++i) {
    auto t = gen.table();
    for (auto f : {ResultFormat::Json, ResultFormat::Xml}) {
      auto back = reparse(formatResults(t, f));
      ASSERT_EQ(back.variables, t.variables) << formatName(f) << " iteration " << i;
      ASSERT_EQ(back.solutions, t.solutions) << formatName(f) << " iteration " << i;
    }
  }
}

TEST(Formats, CorpusRoundTripsAndHeadersFollowProjection) {
  const auto& d = hubtest::demo();
  for (const char* text : hubtest::queries::kCorpus) {
    auto q = hub::sparql::parseQuery(text);
    auto t = hub::rewriter::evaluateQuery(q, d.combinedContext());
    for (auto f : {ResultFormat::Json, ResultFormat::Xml}) {
      EXPECT_EQ(asSet(reparse(formatResults(t, f))), asSet(t)) << text;
    }
    std::string csvHeader, tsvHeader;
    for (const auto& v : q.resultVariables()) {
      csvHeader += (csvHeader.empty() ? "" : ",") + v;
      tsvHeader += (tsvHeader.empty() ? "?" : "\t?") + v;
    }
    EXPECT_EQ(firstLine(formatResults(t, ResultFormat::Csv).body), csvHeader);
    EXPECT_EQ(firstLine(formatResults(t, ResultFormat::Tsv).body), tsvHeader);
  }
}

TEST(Formats, NamesAndNegotiation) {
  EXPECT_EQ(parseFormat("JSON"), ResultFormat::Json);
  EXPECT_EQ(parseFormat("text/tab-separated-values; charset=utf-8"), ResultFormat::Tsv);
  EXPECT_EQ(parseFormat("yaml"), std::nullopt);
  EXPECT_THROW(formatResults(SolutionTable{}, "yaml"), UnknownFormatError);

  EXPECT_EQ(negotiate("text/csv;q=0.5, application/sparql-results+xml"), ResultFormat::Xml);
  EXPECT_EQ(negotiate("text/html;q=0.9,text/tab-separated-values;q=0.95"), ResultFormat::Tsv);
  EXPECT_EQ(negotiate("*/*"), std::nullopt);
  EXPECT_EQ(negotiate("csv"), std::nullopt);
  EXPECT_EQ(negotiate(""), std::nullopt);
}

// --- config ----------------------------------------------------------------------

TEST(Config, DemoConfig) {
  auto cfg = demoConfig();
  EXPECT_EQ(cfg.host, "127.0.0.1");
  EXPECT_EQ(cfg.port, 8080);
  ASSERT_EQ(cfg.databases.size(), 2u);
  EXPECT_TRUE(fs::exists(cfg.databases[0].fixture));
  EXPECT_TRUE(cfg.databases[0].fixture.is_absolute());
  EXPECT_EQ(cfg.defaultDatabase, "sensors");
  EXPECT_EQ(cfg.graphs.size(), 3u);
}

TEST(Config, Errors) {
  const std::string db = R"({"name": "a", "fixture": "f", "mappings": "m"})";
  const std::pair<std::string, std::string> cases[] = {
      {"[]", "JSON object"},
      {"{", "not valid JSON"},
      {R"({"ontology": "o", "databases": [], "colour": 1})", "colour"},
      {R"({"databases": []})", "ontology"},
      {R"({"ontology": "o", "listen": "localhost", "databases": []})", "listen"},
      {R"({"ontology": "o", "databases": [{"name": "federated", "fixture": "f", "mappings": "m"}]})", "reserved"},
      {R"({"ontology": "o", "databases": [)" + db + "," + db + "]}", "twice"},
      {R"({"ontology": "o", "databases": [)" + db + R"(], "default_format": "yaml"})", "yaml"},
      {R"({"ontology": "o", "databases": [)" + db + R"(], "default_database": "b"})", "'b'"},
      {R"({"ontology": "o", "databases": [)" + db + R"(], "timeout_ms": 0})", "timeout_ms"},
  };
  for (const auto& [doc, needle] : cases) {
    try {
      parseConfig(doc, "/tmp");
      ADD_FAILURE() << "accepted " << doc;
    } catch (const ConfigError& e) {
      EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
    }
  }
}

TEST(Config, MissingFixtureNamesPath) {
  auto cfg = demoConfig();
  cfg.databases[1].fixture = "/nonexistent/events.fixture";
  try {
    Hub hub(cfg);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/events.fixture"), std::string::npos);
  }
}

// --- catalogue -------------------------------------------------------------------

TEST(Catalogue, ItemsAreFeedsAndDatastreams) {
  const auto& d = hubtest::demo();
  auto graph = hub::mappings::materializeAll(d.sensorsMappings, *d.sensors);
  auto events = hub::mappings::materializeAll(d.eventsMappings, *d.events);
  graph.insert(events.begin(), events.end());
  graph = hubtest::oracle::saturate(graph, d.ontology);
  std::set<std::string> expected;
  for (const auto& t : graph) {
    if (t.predicate == Term::iri(std::string(hub::vocab::rdf::kType)) &&
        (t.object == Term::iri(kBt + "Feed") || t.object == Term::iri(kBt + "Datastream"))) {
      expected.insert(t.subject.value());
    }
  }

  auto doc = buildCatalogue(d.combinedContext());
  std::set<std::string> hrefs;
  for (const auto& item : doc.items) {
    hrefs.insert(item.href);
    EXPECT_NE(std::find(item.metadata.begin(), item.metadata.end(),
                        Relation{std::string(kContentTypeRel), std::string(kItemMediaType)}),
              item.metadata.end());
    bool described = std::any_of(item.metadata.begin(), item.metadata.end(),
                                 [](const Relation& r) { return r.rel == kDescriptionRel && !r.val.empty(); });
    EXPECT_TRUE(described) << item.href;
  }
  EXPECT_EQ(hrefs, expected);
  EXPECT_EQ(doc.items.size(), 9u);
  EXPECT_TRUE(std::is_sorted(doc.items.begin(), doc.items.end(),
                             [](const auto& a, const auto& b) { return a.href < b.href; }));
}

TEST(Catalogue, JsonDocument) {
  auto doc = nlohmann::json::parse(toJson(buildCatalogue(hubtest::demo().combinedContext())));
  EXPECT_EQ(doc["catalogue-metadata"],
            nlohmann::json::parse(R"([
              {"rel": "urn:X-hypercat:rels:isContentType", "val": "application/vnd.hypercat.catalogue+json"},
              {"rel": "urn:X-hypercat:rels:hasDescription:en", "val": "BT Hypercat data hub"}])"));
  ASSERT_EQ(doc["items"].size(), 9u);
  for (const auto& item : doc["items"]) {
    EXPECT_TRUE(item["href"].is_string());
    EXPECT_TRUE(item["item-metadata"].is_array());
  }
}

TEST(Catalogue, EmptyDatabaseHasNoItems) {
  // The sensors fixture with every row removed.
  const fs::path dir = fs::temp_directory_path() / "hub-endpoint-empty";
  fs::create_directories(dir);
  std::ifstream in(hubtest::sourcePath("data/fixtures/sensors.fixture"));
  std::ofstream out(dir / "empty.fixture");
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("row", 0) != 0) out << line << "\n";
  }
  out.close();

  auto cfg = demoConfig();
  cfg.databases.resize(1);
  cfg.databases[0].fixture = dir / "empty.fixture";
  cfg.graphs.clear();
  Hub hub(cfg);
  EXPECT_TRUE(hub.catalogue().items.empty());
  EXPECT_EQ(hub.catalogue().metadata.size(), 2u);
  EXPECT_TRUE(hub.catalogueRdf().empty());
}

TEST(Catalogue, RdfTypesFeedsWithTheirClass) {
  const auto& d = hubtest::demo();
  auto triples = hub::rdf::parseNTriples(hub::rdf::serializeNTriples(buildCatalogueRdf(d.combinedContext())));
  const Term type = Term::iri(std::string(hub::vocab::rdf::kType));
  EXPECT_TRUE(triples.count({Term::iri("http://api.bt-hypercat.com/sensors/feeds/f1"), type,
                             Term::iri(kBt + "SensorFeed")}));
  std::size_t typed = 0;
  for (const auto& t : triples) typed += t.predicate == type;
  EXPECT_EQ(typed, 9u);
}

// --- protocol --------------------------------------------------------------------

TEST(Protocol, GetAndPostAgree) {
  auto& c = demoServer().client();
  auto get = c.Get("/sparql/sensors", httplib::Params{{"query", kFeedQuery}}, httplib::Headers{});
  ASSERT_TRUE(get);
  EXPECT_EQ(get->status, 200);
  EXPECT_EQ(get->get_header_value("Content-Type"), "application/sparql-results+json");

  auto direct = c.Post("/sparql/sensors", kFeedQuery, "application/sparql-query");
  ASSERT_TRUE(direct);
  EXPECT_EQ(direct->status, 200);
  EXPECT_EQ(direct->body, get->body);

  auto form = c.Post("/sparql/sensors", httplib::Params{{"query", kFeedQuery}});
  ASSERT_TRUE(form);
  EXPECT_EQ(form->status, 200);
  EXPECT_EQ(form->body, get->body);

  auto t = hub::federation::parseResults(hub::federation::ResultsFormat::Json, get->body);
  EXPECT_EQ(t.solutions.size(), 2u);
}

TEST(Protocol, MalformedQueryIs400WithPosition) {
  auto& c = demoServer().client();
  auto res = c.Get("/sparql/sensors", httplib::Params{{"query", "SELECT ?s\nWHERE { ?s ?p }"}}, httplib::Headers{});
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);
  EXPECT_TRUE(std::regex_search(res->body, std::regex("line 2, column [0-9]+"))) << res->body;
}

TEST(Protocol, ClientErrors) {
  auto& c = demoServer().client();
  auto unknown = c.Get("/sparql/nosuchdb", httplib::Params{{"query", kFeedQuery}}, httplib::Headers{});
  ASSERT_TRUE(unknown);
  EXPECT_EQ(unknown->status, 404);

  auto missing = c.Get("/sparql/sensors");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 400);

  auto badFormat = c.Get("/sparql/sensors", httplib::Params{{"query", kFeedQuery}, {"format", "yaml"}},
                         httplib::Headers{});
  ASSERT_TRUE(badFormat);
  EXPECT_EQ(badFormat->status, 415);

  auto badBody = c.Post("/sparql/sensors", kFeedQuery, "text/plain");
  ASSERT_TRUE(badBody);
  EXPECT_EQ(badBody->status, 415);

  auto service = c.Get("/sparql/sensors",
                       httplib::Params{{"query", "SELECT * WHERE { SERVICE <http://x/> { ?s ?p ?o } }"}},
                       httplib::Headers{});
  ASSERT_TRUE(service);
  EXPECT_EQ(service->status, 400);
}

TEST(Protocol, AllFiveFormatsWithMediaTypes) {
  auto& c = demoServer().client();
  const std::pair<const char*, const char*> formats[] = {
      {"json", "application/sparql-results+json"}, {"xml", "application/sparql-results+xml"},
      {"csv", "text/csv"}, {"tsv", "text/tab-separated-values"}, {"html", "text/html"}};
  for (const auto& [name, type] : formats) {
    auto byParam = c.Get("/sparql/sensors", httplib::Params{{"query", kFeedQuery}, {"format", name}},
                         httplib::Headers{});
    ASSERT_TRUE(byParam);
    EXPECT_EQ(byParam->status, 200);
    EXPECT_EQ(byParam->get_header_value("Content-Type"), type);

    auto byAccept = c.Get("/sparql/sensors", httplib::Params{{"query", kFeedQuery}},
                          httplib::Headers{{"Accept", type}});
    ASSERT_TRUE(byAccept);
    EXPECT_EQ(byAccept->get_header_value("Content-Type"), type);
    EXPECT_EQ(byAccept->body, byParam->body);
  }
  auto fallback = c.Get("/sparql/sensors", httplib::Params{{"query", kFeedQuery}},
                        httplib::Headers{{"Accept", "image/png"}});
  ASSERT_TRUE(fallback);
  EXPECT_EQ(fallback->get_header_value("Content-Type"), "application/sparql-results+json");
}

TEST(Protocol, FederatedRouteWithoutServiceMatchesDefaultDatabase) {
  auto& c = demoServer().client();
  for (const char* text : hubtest::queries::kCorpus) {
    auto a = c.Get("/sparql/federated", httplib::Params{{"query", text}}, httplib::Headers{});
    auto b = c.Get("/sparql/sensors", httplib::Params{{"query", text}}, httplib::Headers{});
    ASSERT_TRUE(a && b);
    EXPECT_EQ(a->status, 200);
    EXPECT_EQ(a->body, b->body) << text;
  }
}

TEST(Protocol, FederatedQueryOverHttp) {
  auto& c = demoServer().client();
  auto res = c.Post("/sparql/federated", hubtest::queries::kBusStops, "application/sparql-query");
  ASSERT_TRUE(res);
  ASSERT_EQ(res->status, 200) << res->body;
  auto t = hub::federation::parseResults(hub::federation::ResultsFormat::Json, res->body);
  EXPECT_EQ(t.solutions.size(), 3u);
}

TEST(Protocol, FailingServiceIs502) {
  auto cfg = demoConfig();
  cfg.remotes.push_back({"http://down.example/sparql", "http://127.0.0.1:1/sparql"});
  LiveHub live(cfg);
  auto res = live.client().Get(
      "/sparql/federated",
      httplib::Params{{"query", "SELECT * WHERE { SERVICE <http://down.example/sparql> { ?s ?p ?o } }"}},
      httplib::Headers{});
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 502);
  EXPECT_NE(res->body.find("http://down.example/sparql"), std::string::npos);
}

TEST(Protocol, CatalogueRoutes) {
  auto& c = demoServer().client();
  auto cat = c.Get("/cat");
  ASSERT_TRUE(cat);
  EXPECT_EQ(cat->get_header_value("Content-Type"), kCatalogueMediaType);
  EXPECT_EQ(nlohmann::json::parse(cat->body)["items"].size(), 9u);

  auto rdf = c.Get("/cat-rdf");
  ASSERT_TRUE(rdf);
  EXPECT_EQ(rdf->status, 200);
  auto triples = hub::rdf::parseNTriples(rdf->body);
  EXPECT_EQ(triples, demoServer().hub().catalogueRdf());
}

TEST(Protocol, StaticFiles) {
  const fs::path dir = fs::temp_directory_path() / "hub-endpoint-static";
  fs::create_directories(dir);
  std::ofstream(dir / "index.html") << "<p>editor</p>\n";
  auto cfg = demoConfig();
  cfg.staticDir = dir;
  LiveHub live(cfg);
  auto res = live.client().Get("/index.html");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(res->body, "<p>editor</p>\n");
  auto sparql = live.client().Get("/sparql/sensors", httplib::Params{{"query", kFeedQuery}}, httplib::Headers{});
  ASSERT_TRUE(sparql);
  EXPECT_EQ(sparql->status, 200);
}

TEST(Protocol, BindFailureNamesAddress) {
  Hub hub(demoConfig());
  Server a(hub), b(hub);
  a.bind("127.0.0.1", 0);
  try {
    b.bind("127.0.0.1", a.port());
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("127.0.0.1:" + std::to_string(a.port())), std::string::npos);
  }
}
