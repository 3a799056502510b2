#include "hub/relstore/Sql.h"

#include <cctype>
#include <optional>
#include <tuple>

namespace hub::relstore {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

struct Token {
  enum class Kind { Ident, Comma, Dot, LParen, RParen, End } kind;
  std::string text;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t col = i + 1;
    if (c == ',') out.push_back({Token::Kind::Comma, ",", col});
    else if (c == '.') out.push_back({Token::Kind::Dot, ".", col});
    else if (c == '(') out.push_back({Token::Kind::LParen, "(", col});
    else if (c == ')') out.push_back({Token::Kind::RParen, ")", col});
    else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i;
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Token::Kind::Ident, std::string(s.substr(start, i - start)), col});
      continue;
    } else {
      throw SqlSyntaxError(std::string("unexpected character '") + c + "'", 1, col);
    }
    ++i;
  }
  out.push_back({Token::Kind::End, "", s.size() + 1});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

  SqlQuery parse() {
    keyword("select");
    SqlQuery q;
    std::vector<std::string> qualifiers;
    do {
      auto [projection, qualifier] = projectionItem();
      q.projections.push_back(std::move(projection));
      qualifiers.push_back(std::move(qualifier));
    } while (accept(Token::Kind::Comma));
    keyword("from");
    q.table = ident("table name").text;
    if (peek().kind != Token::Kind::End) fail("unexpected '" + peek().text + "'");
    for (const auto& qualifier : qualifiers) {
      if (!qualifier.empty() && qualifier != q.table) {
        throw SqlSyntaxError("qualifier '" + qualifier + "' does not name table '" + q.table + "'",
                             1, 1);
      }
    }
    return q;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw SqlSyntaxError(msg, 1, peek().column);
  }

  bool accept(Token::Kind kind) {
    if (peek().kind != kind) return false;
    ++pos_;
    return true;
  }

  void expect(Token::Kind kind, const char* what) {
    if (!accept(kind)) fail(std::string("expected ") + what);
  }

  const Token& ident(const char* what) {
    if (peek().kind != Token::Kind::Ident) fail(std::string("expected ") + what);
    return tokens_[pos_++];
  }

  void keyword(std::string_view kw) {
    if (peek().kind != Token::Kind::Ident || lower(peek().text) != kw) {
      fail("expected '" + std::string(kw) + "'");
    }
    ++pos_;
  }

  // [qualifier.]column
  std::pair<std::string, std::string> columnRef() {
    std::string first = ident("column").text;
    if (accept(Token::Kind::Dot)) return {first, ident("column").text};
    return {"", first};
  }

  std::pair<Projection, std::string> projectionItem() {
    Projection p;
    std::string qualifier;
    if (peek().kind == Token::Kind::Ident && tokens_[pos_ + 1].kind == Token::Kind::LParen) {
      std::string fn = lower(ident("function").text);
      if (fn == "to_timestamp") p.function = SqlFunction::ToTimestamp;
      else if (fn == "unnest") p.function = SqlFunction::Unnest;
      else if (fn == "st_astext") p.function = SqlFunction::StAsText;
      else fail("unsupported function '" + fn + "'");
      expect(Token::Kind::LParen, "'('");
      std::tie(qualifier, p.column) = columnRef();
      expect(Token::Kind::RParen, "')'");
    } else {
      std::tie(qualifier, p.column) = columnRef();
    }
    if (peek().kind == Token::Kind::Ident && lower(peek().text) == "as") {
      ++pos_;
      p.alias = ident("alias").text;
    }
    return {std::move(p), std::move(qualifier)};
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string Projection::toSql(std::string_view table) const {
  std::string ref = std::string(table) + "." + column;
  switch (function) {
    case SqlFunction::None: break;
    case SqlFunction::ToTimestamp: ref = "TO_TIMESTAMP(" + ref + ")"; break;
    case SqlFunction::Unnest: ref = "unnest(" + ref + ")"; break;
    case SqlFunction::StAsText: ref = "ST_AsText(" + ref + ")"; break;
  }
  if (!alias.empty()) ref += " AS " + alias;
  return ref;
}

std::string SqlQuery::toSql() const {
  std::string out = "SELECT ";
  for (std::size_t i = 0; i < projections.size(); ++i) {
    if (i) out += ", ";
    out += projections[i].toSql(table);
  }
  out += " FROM " + table;
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    out += i ? " AND " : " WHERE ";
    out += table + "." + constraints[i].column + " = " + toSqlLiteral(constraints[i].value);
  }
  return out;
}

SqlQuery parseSql(std::string_view text) { return Parser(text).parse(); }

}  // namespace hub::relstore
