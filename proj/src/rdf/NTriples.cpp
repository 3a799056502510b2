#include "hub/rdf/NTriples.h"

#include <cctype>
#include <cstdint>

#include "hub/rdf/Lexical.h"
#include "hub/rdf/Vocabulary.h"

namespace hub::rdf {

namespace {

void appendUtf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

class LineParser {
 public:
  LineParser(std::string_view line, std::size_t lineNo) : s_(line), lineNo_(lineNo) {}

  Triple parse() {
    Triple t;
    skipWs();
    t.subject = parseIriTerm("subject");
    skipWs();
    t.predicate = parseIriTerm("predicate");
    skipWs();
    if (peek() == '"') {
      t.object = parseLiteral();
    } else {
      t.object = parseIriTerm("object");
    }
    skipWs();
    if (peek() != '.') fail("expected '.'");
    ++pos_;
    skipWs();
    if (pos_ < s_.size() && s_[pos_] != '#') fail("unexpected content after '.'");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw NTriplesError(msg, lineNo_, pos_ + 1);
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  void skipWs() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }

  std::uint32_t hex(std::size_t n) {
    if (pos_ + n > s_.size()) fail("truncated \\u escape");
    std::uint32_t v = 0;
    for (std::size_t i = 0; i < n; ++i) {
      char c = s_[pos_++];
      v <<= 4;
      if (c >= '0' && c <= '9') v |= static_cast<std::uint32_t>(c - '0');
      else if (c >= 'a' && c <= 'f') v |= static_cast<std::uint32_t>(c - 'a' + 10);
      else if (c >= 'A' && c <= 'F') v |= static_cast<std::uint32_t>(c - 'A' + 10);
      else fail("invalid hex digit in escape");
    }
    return v;
  }

  Term parseIriTerm(const char* what) {
    if (peek() == '_') fail("blank nodes are not supported");
    if (peek() != '<') fail(std::string("expected IRI for ") + what);
    ++pos_;
    std::string iri;
    while (true) {
      if (pos_ >= s_.size()) fail("unterminated IRI");
      char c = s_[pos_++];
      if (c == '>') break;
      if (c == '\\') {
        char e = peek();
        ++pos_;
        if (e == 'u') appendUtf8(iri, hex(4));
        else if (e == 'U') appendUtf8(iri, hex(8));
        else fail("invalid escape in IRI");
      } else if (static_cast<unsigned char>(c) <= 0x20 || c == '<' || c == '"') {
        fail("invalid character in IRI");
      } else {
        iri += c;
      }
    }
    if (iri.find(':') == std::string::npos) fail("IRI is not absolute: " + iri);
    return Term::iri(std::move(iri));
  }

  Term parseLiteral() {
    ++pos_;  // opening quote
    std::string lex;
    while (true) {
      if (pos_ >= s_.size()) fail("unterminated string literal");
      char c = s_[pos_++];
      if (c == '"') break;
      if (c != '\\') {
        lex += c;
        continue;
      }
      char e = peek();
      ++pos_;
      switch (e) {
        case 't': lex += '\t'; break;
        case 'b': lex += '\b'; break;
        case 'n': lex += '\n'; break;
        case 'r': lex += '\r'; break;
        case 'f': lex += '\f'; break;
        case '"': lex += '"'; break;
        case '\'': lex += '\''; break;
        case '\\': lex += '\\'; break;
        case 'u': appendUtf8(lex, hex(4)); break;
        case 'U': appendUtf8(lex, hex(8)); break;
        default: fail("invalid string escape");
      }
    }
    if (peek() == '@') {
      ++pos_;
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '-')) {
        ++pos_;
      }
      if (pos_ == start) fail("empty language tag");
      return Term::langLiteral(std::move(lex), std::string(s_.substr(start, pos_ - start)));
    }
    if (peek() == '^') {
      if (pos_ + 1 >= s_.size() || s_[pos_ + 1] != '^') fail("expected '^^'");
      pos_ += 2;
      Term dt = parseIriTerm("datatype");
      if (!isValidLexical(lex, dt.value())) {
        fail("invalid lexical form \"" + lex + "\" for datatype <" + dt.value() + ">");
      }
      return Term::literal(std::move(lex), dt.value());
    }
    return Term::string(std::move(lex));
  }

  std::string_view s_;
  std::size_t lineNo_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string serializeNTriples(const TripleSet& triples) {
  std::string out;
  for (const auto& t : triples) {
    out += toString(t);
    out += '\n';
  }
  return out;
}

std::vector<Triple> parseNTriplesOrdered(std::string_view text) {
  std::vector<Triple> out;
  std::size_t lineNo = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++lineNo;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::size_t first = line.find_first_not_of(" \t");
    if (first != std::string_view::npos && line[first] != '#') {
      out.push_back(LineParser(line, lineNo).parse());
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

TripleSet parseNTriples(std::string_view text) {
  auto ordered = parseNTriplesOrdered(text);
  return TripleSet(ordered.begin(), ordered.end());
}

}  // namespace hub::rdf
