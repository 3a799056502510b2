#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "Demo.h"
#include "hub/mappings/Registry.h"
#include "hub/mappings/Template.h"
#include "hub/rdf/NTriples.h"
#include "hub/rdf/Vocabulary.h"

using namespace hub::mappings;
using hub::rdf::Term;
using hub::relstore::Value;

namespace {

const std::string kBt = "http://portal.bt-hypercat.com/ontologies/bt-hypercat#";
const std::string kSensors = "http://api.bt-hypercat.com/sensors/";
const std::string kHeader =
    "prefix bt-sensors: <http://api.bt-hypercat.com/sensors/>\n"
    "prefix bt-hypercat: <http://portal.bt-hypercat.com/ontologies/bt-hypercat#>\n"
    "prefix xsd: <http://www.w3.org/2001/XMLSchema#>\n";

std::vector<std::string> sortedLines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) lines.push_back(line);
  }
  std::sort(lines.begin(), lines.end());
  return lines;
}

}  // namespace

TEST(MappingDocument, SensorFeedBlock) {
  auto reg = parseMappingDocument(kHeader +
                                  "mappingId mapping:SensorFeed\n"
                                  "target bt-sensors:feeds/{feed.id} a bt-hypercat:SensorFeed .\n"
                                  "source SELECT feed.id FROM feed\n");
  ASSERT_EQ(reg.mappings().size(), 1u);
  const auto& m = reg.mappings()[0];
  EXPECT_EQ(m.id, "mapping:SensorFeed");
  EXPECT_TRUE(m.isTypeMapping());
  EXPECT_EQ(reg.byClass(kBt + "SensorFeed").size(), 1u);
  EXPECT_EQ(m.target.subject.toString(), "<" + kSensors + "feeds/{feed.id}>");
}

TEST(MappingDocument, PrefixesOnly) {
  auto reg = parseMappingDocument(kHeader);
  EXPECT_TRUE(reg.mappings().empty());
  EXPECT_EQ(reg.prefixes().size(), 3u);
}

TEST(MappingDocument, PlaceholderMustBeProjected) {
  try {
    parseMappingDocument(kHeader +
                         "mappingId mapping:feed_title\n"
                         "target bt-sensors:feeds/{feed.id} bt-hypercat:feed_title "
                         "\"{feed.title}\"^^xsd:string .\n"
                         "source SELECT feed.id FROM feed\n");
    FAIL() << "expected an error";
  } catch (const hub::Error& e) {
    EXPECT_NE(std::string(e.what()).find("feed.title"), std::string::npos) << e.what();
  }
}

TEST(MappingDocument, UnknownPrefixAndDuplicateId) {
  EXPECT_THROW(parseMappingDocument("mappingId m\ntarget nope:x a nope:C .\nsource SELECT t.id FROM t\n"),
               hub::Error);
  std::string block =
      "mappingId mapping:x\n"
      "target bt-sensors:feeds/{feed.id} a bt-hypercat:Feed .\n"
      "source SELECT feed.id FROM feed\n";
  EXPECT_THROW(parseMappingDocument(kHeader + block + block), hub::Error);
}

TEST(MappingDocument, ShippedDocumentsValidate) {
  const auto& d = hubtest::demo();
  EXPECT_NO_THROW(d.sensorsMappings.validate(*d.sensors));
  EXPECT_NO_THROW(d.eventsMappings.validate(*d.events));
  // 20 feed properties, the feed class, the stream link and class, 9
  // datastream properties, the datapoint class and 5 datapoint properties.
  EXPECT_EQ(d.sensorsMappings.mappings().size(), 38u);
  EXPECT_EQ(d.eventsMappings.mappings().size(), 33u);
  // Event streams carry only the four common datastream properties.
  EXPECT_TRUE(d.eventsMappings.byPredicate(kBt + "datastream_unit_type").empty());
  EXPECT_EQ(d.sensorsMappings.byPredicate(kBt + "datastream_unit_type").size(), 1u);
}

TEST(Template, SensorFeedExpansion) {
  const auto& m = *hubtest::demo().sensorsMappings.find("mapping:SensorFeed");
  auto t = expandTemplate(m.target, {Value{std::string("f1")}});
  ASSERT_TRUE(t);
  EXPECT_EQ(t->subject, Term::iri(kSensors + "feeds/f1"));
  EXPECT_EQ(t->predicate.value(), hub::vocab::rdf::kType);
  EXPECT_EQ(t->object, Term::iri(kBt + "SensorFeed"));
}

TEST(Template, NullSuppressesTriple) {
  const auto& m = *hubtest::demo().sensorsMappings.find("mapping:feed_title");
  EXPECT_FALSE(expandTemplate(m.target, {Value{std::string("f1")}, Value{}}));
}

TEST(Template, PercentEncodesIriPlaceholders) {
  const auto& m = *hubtest::demo().sensorsMappings.find("mapping:feed_id");
  auto t = expandTemplate(m.target, {Value{std::string("a b")}});
  ASSERT_TRUE(t);
  EXPECT_EQ(t->subject.value(), kSensors + "feeds/a%20b");
  EXPECT_EQ(t->object, Term::string("a b"));
  EXPECT_EQ(percentEncode("a/b?c~d"), "a%2Fb%3Fc~d");
  EXPECT_EQ(percentDecode("a%2Fb%3Fc~d"), "a/b?c~d");
}

TEST(Template, FeedIdTripleSurfaceForm) {
  const auto& m = *hubtest::demo().sensorsMappings.find("mapping:feed_id");
  auto t = expandTemplate(m.target, {Value{std::string("feedID")}});
  ASSERT_TRUE(t);
  EXPECT_EQ(hub::rdf::toString(*t),
            "<http://api.bt-hypercat.com/sensors/feeds/feedID> "
            "<http://portal.bt-hypercat.com/ontologies/bt-hypercat#feed_id> "
            "\"feedID\"^^<http://www.w3.org/2001/XMLSchema#string> .");
}

TEST(Template, InverseMatchRecoversPlaceholders) {
  const auto& m = *hubtest::demo().sensorsMappings.find("mapping:hasSensorStream");
  auto caps = matchTerm(m.target.object, Term::iri(kSensors + "feeds/f%201/datastreams/0"));
  ASSERT_TRUE(caps);
  ASSERT_EQ(caps->size(), 2u);
  EXPECT_EQ((*caps)[0].second, "f 1");
  EXPECT_EQ((*caps)[1].second, "0");
  EXPECT_FALSE(matchTerm(m.target.object, Term::iri(kSensors + "feeds/f1")));
  EXPECT_FALSE(matchTerm(m.target.object, Term::string("f1")));
}

TEST(Template, ExpansionIsDeterministic) {
  const auto& d = hubtest::demo();
  for (const auto& m : d.sensorsMappings.mappings()) {
    auto rows = d.sensors->execute(m.source);
    for (const auto& row : rows.rows) {
      ASSERT_EQ(expandTemplate(m.target, row), expandTemplate(m.target, row)) << m.id;
    }
  }
}

TEST(Materialize, MatchesGoldenFiles) {
  const auto& d = hubtest::demo();
  auto sensors = hub::rdf::serializeNTriples(materializeAll(d.sensorsMappings, *d.sensors));
  auto events = hub::rdf::serializeNTriples(materializeAll(d.eventsMappings, *d.events));
  EXPECT_EQ(sortedLines(sensors),
            sortedLines(hubtest::readFile(hubtest::sourcePath("tests/oracle/sensors.golden.nt"))));
  EXPECT_EQ(sortedLines(events),
            sortedLines(hubtest::readFile(hubtest::sourcePath("tests/oracle/events.golden.nt"))));
}

TEST(Materialize, StreamLinksPresent) {
  const auto& d = hubtest::demo();
  auto triples = materializeAll(d.sensorsMappings, *d.sensors);
  for (const char* stream : {"0", "1"}) {
    hub::rdf::Triple link{Term::iri(kSensors + "feeds/f1"), Term::iri(kBt + "hasSensorStream"),
                          Term::iri(kSensors + "feeds/f1/datastreams/" + stream)};
    EXPECT_TRUE(triples.count(link)) << stream;
  }
}

TEST(Materialize, SubjectsCarryDatabaseBase) {
  const auto& d = hubtest::demo();
  for (const auto& t : materializeAll(d.sensorsMappings, *d.sensors)) {
    EXPECT_EQ(t.subject.value().rfind(kSensors, 0), 0u) << hub::rdf::toString(t);
  }
  for (const auto& t : materializeAll(d.eventsMappings, *d.events)) {
    EXPECT_EQ(t.subject.value().rfind("http://api.bt-hypercat.com/events/", 0), 0u);
  }
}

TEST(Materialize, EmptyDatabase) {
  hub::relstore::Database db;
  db.loadFixture(
      "table feed\ncol id text\n"
      "table datastream\ncol feed text\ncol id text\n");
  auto reg = parseMappingDocument(kHeader +
                                  "mappingId mapping:SensorFeed\n"
                                  "target bt-sensors:feeds/{feed.id} a bt-hypercat:SensorFeed .\n"
                                  "source SELECT feed.id FROM feed\n");
  EXPECT_TRUE(materializeAll(reg, db).empty());
}

// One feed, no nulls, two tags: one type triple plus every feed property
// mapping, with the tag mapping contributing once per tag.
TEST(Materialize, SingleFeedTripleCount) {
  hub::relstore::Database db;
  db.loadFixture(
      "table feed\n"
      "col id text\ncol creator text\ncol updated epoch-seconds\ncol title text\ncol url text\n"
      "col status text\ncol private bool\ncol description text\ncol icon text\ncol website text\n"
      "col email text\ncol tag text-array\ncol location_name text\ncol exposure text\n"
      "col dom text\ncol disposition text\ncol lat float64\ncol lon float64\ncol ele float64\n"
      "col the_geom wkt-text\n"
      "row x\tc\t1500000000\tt\tu\tlive\tf\td\ti\tw\te\ta|b\tl\toutdoor\tdm\tfixed\t1.5\t2.5\t3.5\t"
      "POINT(2.5 1.5)\n"
      "table datastream\ncol feed text\ncol id text\ncol tag text-array\ncol c_time epoch-seconds\n"
      "col c_value float64\ncol max_value float64\ncol min_value float64\ncol unit_symbol text\n"
      "col unit_type text\ncol unit_text text\n"
      "table datapoint\ncol id text\ncol at_time epoch-seconds\ncol western_longitude float64\n"
      "col southern_latitude float64\ncol eastern_longitude float64\ncol northern_latitude float64\n");
  auto triples = materializeAll(hubtest::demo().sensorsMappings, db);
  std::size_t typeTriples = 0;
  for (const auto& t : triples) typeTriples += t.predicate.value() == hub::vocab::rdf::kType;
  EXPECT_EQ(typeTriples, 1u);
  EXPECT_EQ(triples.size() - typeTriples, 21u);
}
