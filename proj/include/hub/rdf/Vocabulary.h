#pragma once

#include <string_view>

// Well-known IRIs used throughout the hub.
namespace hub::vocab {

namespace xsd {
inline constexpr std::string_view kNamespace = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kString = "http://www.w3.org/2001/XMLSchema#string";
inline constexpr std::string_view kInteger = "http://www.w3.org/2001/XMLSchema#integer";
inline constexpr std::string_view kDecimal = "http://www.w3.org/2001/XMLSchema#decimal";
inline constexpr std::string_view kDouble = "http://www.w3.org/2001/XMLSchema#double";
inline constexpr std::string_view kFloat = "http://www.w3.org/2001/XMLSchema#float";
inline constexpr std::string_view kBoolean = "http://www.w3.org/2001/XMLSchema#boolean";
inline constexpr std::string_view kDateTime = "http://www.w3.org/2001/XMLSchema#dateTime";
}  // namespace xsd

namespace rdf {
inline constexpr std::string_view kNamespace = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr std::string_view kLangString =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";
}  // namespace rdf

namespace rdfs {
inline constexpr std::string_view kNamespace = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kSubClassOf = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
inline constexpr std::string_view kSubPropertyOf =
    "http://www.w3.org/2000/01/rdf-schema#subPropertyOf";
inline constexpr std::string_view kRange = "http://www.w3.org/2000/01/rdf-schema#range";
inline constexpr std::string_view kClass = "http://www.w3.org/2000/01/rdf-schema#Class";
}  // namespace rdfs

namespace owl {
inline constexpr std::string_view kClass = "http://www.w3.org/2002/07/owl#Class";
inline constexpr std::string_view kDatatypeProperty =
    "http://www.w3.org/2002/07/owl#DatatypeProperty";
inline constexpr std::string_view kObjectProperty = "http://www.w3.org/2002/07/owl#ObjectProperty";
}  // namespace owl

namespace hypercat {
inline constexpr std::string_view kNamespace =
    "http://portal.bt-hypercat.com/ontologies/bt-hypercat#";
inline constexpr std::string_view kItem = "http://portal.bt-hypercat.com/ontologies/bt-hypercat#Item";
inline constexpr std::string_view kFeed = "http://portal.bt-hypercat.com/ontologies/bt-hypercat#Feed";
inline constexpr std::string_view kDatastream =
    "http://portal.bt-hypercat.com/ontologies/bt-hypercat#Datastream";
inline constexpr std::string_view kFeedTitle =
    "http://portal.bt-hypercat.com/ontologies/bt-hypercat#feed_title";
}  // namespace hypercat

}  // namespace hub::vocab
