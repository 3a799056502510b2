#include "Demo.h"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hubtest {

std::string sourcePath(const std::string& relative) {
  return std::string(HUB_SOURCE_DIR) + "/" + relative;
}

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

Demo load() {
  Demo d;
  d.ontology = hub::ontology::loadOntology(readFile(sourcePath("data/ontology/bt-hypercat.nt")));
  d.sensors->loadFixture(readFile(sourcePath("data/fixtures/sensors.fixture")));
  d.events->loadFixture(readFile(sourcePath("data/fixtures/events.fixture")));
  d.sensorsMappings =
      hub::mappings::parseMappingDocument(readFile(sourcePath("data/mappings/sensors.map")));
  d.eventsMappings =
      hub::mappings::parseMappingDocument(readFile(sourcePath("data/mappings/events.map")));
  return d;
}

}  // namespace

hub::rewriter::Context Demo::sensorsContext() const {
  return {&ontology, {{"sensors", &sensorsMappings, sensors.get()}}};
}

hub::rewriter::Context Demo::eventsContext() const {
  return {&ontology, {{"events", &eventsMappings, events.get()}}};
}

hub::rewriter::Context Demo::combinedContext() const {
  return {&ontology,
          {{"sensors", &sensorsMappings, sensors.get()}, {"events", &eventsMappings, events.get()}}};
}

const Demo& demo() {
  static const Demo instance = load();
  return instance;
}

}  // namespace hubtest
