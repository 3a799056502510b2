#include "hub/sparql/Parser.h"

#include <cctype>
#include <cstdint>
#include <optional>

#include "hub/rdf/Vocabulary.h"

namespace hub::sparql {

namespace {

namespace xsd = vocab::xsd;

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

bool isAlpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool isDigit(char c) { return c >= '0' && c <= '9'; }
bool isNameChar(char c) { return isAlpha(c) || isDigit(c) || c == '_' || c == '-'; }
bool isHighByte(char c) { return static_cast<unsigned char>(c) >= 0x80; }

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

bool isAbsoluteIri(std::string_view iri) {
  if (iri.empty() || !isAlpha(iri[0])) return false;
  for (std::size_t i = 1; i < iri.size(); ++i) {
    char c = iri[i];
    if (c == ':') return true;
    if (!(isAlpha(c) || isDigit(c) || c == '+' || c == '-' || c == '.')) return false;
  }
  return false;
}

enum class Tok {
  Iri,      // text = IRI
  PName,    // text = prefix, extra = local
  Var,      // text = name
  String,   // text = value
  LangTag,  // text = tag
  Integer,
  Decimal,
  Double,
  Word,   // bare identifier
  Punct,  // text = operator / punctuation
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::string extra;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skipSpace();
      if (i_ >= s_.size()) {
        out.push_back({Tok::End, "", "", line_, col()});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  std::size_t col() const { return i_ - lineStart_ + 1; }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col()); }

  char peek(std::size_t ahead = 0) const {
    return i_ + ahead < s_.size() ? s_[i_ + ahead] : '\0';
  }

  void advance() {
    if (s_[i_] == '\n') {
      ++line_;
      lineStart_ = i_ + 1;
    }
    ++i_;
  }

  void skipSpace() {
    while (i_ < s_.size()) {
      char c = s_[i_];
      if (c == '#') {
        while (i_ < s_.size() && s_[i_] != '\n') ++i_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  Token make(Tok kind, std::string text, std::size_t line, std::size_t column,
             std::string extra = {}) {
    return {kind, std::move(text), std::move(extra), line, column};
  }

  Token next() {
    const std::size_t line = line_;
    const std::size_t column = col();
    const char c = peek();

    if (c == '<') {
      if (auto iri = tryIri()) return make(Tok::Iri, std::move(*iri), line, column);
      if (peek(1) == '=') {
        i_ += 2;
        return make(Tok::Punct, "<=", line, column);
      }
      ++i_;
      return make(Tok::Punct, "<", line, column);
    }
    if (c == '?' || c == '$') {
      ++i_;
      std::size_t start = i_;
      while (i_ < s_.size() && (isAlpha(s_[i_]) || isDigit(s_[i_]) || s_[i_] == '_' ||
                                isHighByte(s_[i_]))) {
        ++i_;
      }
      if (start == i_) throw ParseError("expected variable name", line, column);
      return make(Tok::Var, std::string(s_.substr(start, i_ - start)), line, column);
    }
    if (c == '"' || c == '\'') return make(Tok::String, readString(line, column), line, column);
    if (c == '@') {
      ++i_;
      std::size_t start = i_;
      while (i_ < s_.size() && (isAlpha(s_[i_]) || isDigit(s_[i_]) || s_[i_] == '-')) ++i_;
      if (start == i_) throw ParseError("expected language tag", line, column);
      return make(Tok::LangTag, std::string(s_.substr(start, i_ - start)), line, column);
    }
    if (isDigit(c) || (c == '.' && isDigit(peek(1)))) return readNumber(line, column);
    if (isAlpha(c) || c == '_' || c == ':') {
      std::size_t start = i_;
      while (i_ < s_.size() && (isNameChar(s_[i_]) || s_[i_] == '.')) ++i_;
      // A name never ends in '.'.
      while (i_ > start && s_[i_ - 1] == '.') --i_;
      std::string word(s_.substr(start, i_ - start));
      if (peek() == ':') {
        ++i_;
        std::size_t localStart = i_;
        while (i_ < s_.size() && (isNameChar(s_[i_]) || s_[i_] == '.' || s_[i_] == ':' ||
                                  s_[i_] == '%' || isHighByte(s_[i_]))) {
          ++i_;
        }
        while (i_ > localStart && s_[i_ - 1] == '.') --i_;
        return make(Tok::PName, std::move(word), line, column,
                    std::string(s_.substr(localStart, i_ - localStart)));
      }
      if (word.empty()) throw ParseError("unexpected ':'", line, column);
      return make(Tok::Word, std::move(word), line, column);
    }
    static const char* const kTwo[] = {"^^", "!=", ">=", "&&", "||"};
    for (const char* op : kTwo) {
      if (c == op[0] && peek(1) == op[1]) {
        i_ += 2;
        return make(Tok::Punct, op, line, column);
      }
    }
    static const std::string_view kOne = "{}()[].;,*=>!+-/|^";
    if (kOne.find(c) != std::string_view::npos) {
      ++i_;
      return make(Tok::Punct, std::string(1, c), line, column);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  // '<' starts an IRI only if a '>' follows with no whitespace in between.
  std::optional<std::string> tryIri() {
    std::size_t j = i_ + 1;
    std::string out;
    while (j < s_.size()) {
      char c = s_[j];
      if (c == '>') {
        i_ = j + 1;
        return out;
      }
      if (static_cast<unsigned char>(c) <= 0x20 || c == '<' || c == '"' || c == '{' ||
          c == '}' || c == '|' || c == '^' || c == '`') {
        return std::nullopt;
      }
      if (c == '\\') {
        std::size_t len = j + 1 < s_.size() && s_[j + 1] == 'U' ? 8 : 4;
        if (j + 1 >= s_.size() || (s_[j + 1] != 'u' && s_[j + 1] != 'U')) return std::nullopt;
        auto cp = hexAt(j + 2, len);
        if (!cp) return std::nullopt;
        appendUtf8(out, *cp);
        j += 2 + len;
        continue;
      }
      out += c;
      ++j;
    }
    return std::nullopt;
  }

  std::optional<std::uint32_t> hexAt(std::size_t pos, std::size_t len) const {
    if (pos + len > s_.size()) return std::nullopt;
    std::uint32_t v = 0;
    for (std::size_t k = 0; k < len; ++k) {
      char h = s_[pos + k];
      int d = isDigit(h) ? h - '0'
              : (h >= 'a' && h <= 'f') ? h - 'a' + 10
              : (h >= 'A' && h <= 'F') ? h - 'A' + 10
                                       : -1;
      if (d < 0) return std::nullopt;
      v = v * 16 + static_cast<std::uint32_t>(d);
    }
    return v;
  }

  std::string readString(std::size_t line, std::size_t column) {
    const char q = peek();
    const bool longForm = peek(1) == q && peek(2) == q;
    i_ += longForm ? 3 : 1;
    std::string out;
    for (;;) {
      if (i_ >= s_.size()) throw ParseError("unterminated string", line, column);
      char c = s_[i_];
      if (longForm) {
        if (c == q && peek(1) == q && peek(2) == q) {
          i_ += 3;
          return out;
        }
      } else if (c == q) {
        ++i_;
        return out;
      } else if (c == '\n' || c == '\r') {
        fail("newline in string");
      }
      if (c == '\\') {
        char e = peek(1);
        switch (e) {
          case 't': out += '\t'; break;
          case 'n': out += '\n'; break;
          case 'r': out += '\r'; break;
          case 'b': out += '\b'; break;
          case 'f': out += '\f'; break;
          case '"': out += '"'; break;
          case '\'': out += '\''; break;
          case '\\': out += '\\'; break;
          case 'u':
          case 'U': {
            std::size_t len = e == 'u' ? 4 : 8;
            auto cp = hexAt(i_ + 2, len);
            if (!cp) fail("bad unicode escape");
            appendUtf8(out, *cp);
            i_ += 2 + len;
            continue;
          }
          default: fail("bad escape in string");
        }
        i_ += 2;
        continue;
      }
      out += c;
      advance();
    }
  }

  Token readNumber(std::size_t line, std::size_t column) {
    std::size_t start = i_;
    Tok kind = Tok::Integer;
    while (isDigit(peek())) ++i_;
    if (peek() == '.' && isDigit(peek(1))) {
      kind = Tok::Decimal;
      ++i_;
      while (isDigit(peek())) ++i_;
    }
    if (peek() == 'e' || peek() == 'E') {
      std::size_t save = i_;
      ++i_;
      if (peek() == '+' || peek() == '-') ++i_;
      if (isDigit(peek())) {
        kind = Tok::Double;
        while (isDigit(peek())) ++i_;
      } else {
        i_ = save;
      }
    }
    return make(kind, std::string(s_.substr(start, i_ - start)), line, column);
  }

  std::string_view s_;
  std::size_t i_ = 0;
  std::size_t line_ = 1;
  std::size_t lineStart_ = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(Lexer(text).run()) {}

  Query parse() {
    Query q;
    prologue(q);
    if (isWord("CONSTRUCT") || isWord("ASK") || isWord("DESCRIBE")) {
      unsupported(upper(peek().text) + " queries");
    }
    if (isWord("INSERT") || isWord("DELETE") || isWord("LOAD") || isWord("CLEAR")) {
      unsupported("SPARQL Update");
    }
    expectWord("SELECT");
    if (acceptWord("DISTINCT")) {
      q.distinct = true;
    } else if (isWord("REDUCED")) {
      unsupported("REDUCED");
    }
    if (acceptPunct("*")) {
      q.selectAll = true;
    } else {
      if (peek().kind != Tok::Var) fail("expected projection variable or '*'");
      while (peek().kind == Tok::Var) q.projection.push_back(take().text);
      if (isPunct("(")) unsupported("projection expressions");
    }
    if (isWord("FROM")) unsupported("FROM clauses");
    acceptWord("WHERE");
    expectPunct("{", "'{'");
    groupBody(q.body);
    if (peek().kind != Tok::End) {
      static const char* const kModifiers[] = {"ORDER", "LIMIT", "OFFSET", "GROUP", "HAVING",
                                               "VALUES"};
      for (const char* m : kModifiers) {
        if (isWord(m)) unsupported(std::string(m) == "ORDER" ? "ORDER BY" : m);
      }
      fail("unexpected '" + peek().text + "' after query");
    }
    return q;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return tokens_[i < tokens_.size() ? i : tokens_.size() - 1];
  }
  const Token& take() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, peek().line, peek().column);
  }
  [[noreturn]] void unsupported(const std::string& feature) const {
    throw UnsupportedFeatureError(feature, peek().line, peek().column);
  }

  bool isWord(std::string_view kw) const {
    return peek().kind == Tok::Word && upper(peek().text) == kw;
  }
  bool acceptWord(std::string_view kw) {
    if (!isWord(kw)) return false;
    ++pos_;
    return true;
  }
  void expectWord(std::string_view kw) {
    if (!acceptWord(kw)) fail("expected " + std::string(kw));
  }
  bool isPunct(std::string_view p) const { return peek().kind == Tok::Punct && peek().text == p; }
  bool acceptPunct(std::string_view p) {
    if (!isPunct(p)) return false;
    ++pos_;
    return true;
  }
  void expectPunct(std::string_view p, const char* what) {
    if (!acceptPunct(p)) fail(std::string("expected ") + what);
  }

  void prologue(Query& q) {
    for (;;) {
      if (acceptWord("PREFIX")) {
        if (peek().kind != Tok::PName || !peek().extra.empty()) fail("expected prefix name");
        std::string name = take().text;
        if (peek().kind != Tok::Iri) fail("expected IRI");
        q.prefixes[name] = take().text;
      } else if (isWord("BASE")) {
        unsupported("BASE");
      } else {
        break;
      }
    }
    prefixes_ = &q.prefixes;
  }

  std::string iriOf(const Token& t) const {
    if (t.kind == Tok::Iri) {
      if (!isAbsoluteIri(t.text)) {
        throw ParseError("relative IRI <" + t.text + ">", t.line, t.column);
      }
      return t.text;
    }
    auto it = prefixes_->find(t.text);
    if (it == prefixes_->end()) {
      throw ParseError("unknown prefix '" + t.text + ":'", t.line, t.column);
    }
    return it->second + t.extra;
  }

  bool atIri() const { return peek().kind == Tok::Iri || peek().kind == Tok::PName; }

  // Elements up to and including the closing '}'.
  template <typename Element>
  void groupElements(std::vector<Element>& out, bool insideService) {
    for (;;) {
      if (acceptPunct("}")) return;
      if (peek().kind == Tok::End) fail("expected '}'");
      if (acceptWord("FILTER")) {
        out.push_back(Filter{constraint()});
        acceptPunct(".");
        continue;
      }
      if (isWord("SERVICE")) {
        if (insideService) fail("nested SERVICE");
        if constexpr (std::is_same_v<Element, GroupElement>) {
          out.push_back(service());
          acceptPunct(".");
          continue;
        }
      }
      static const char* const kUnsupported[] = {"OPTIONAL", "UNION", "MINUS", "GRAPH",
                                                 "BIND",     "VALUES", "SELECT"};
      for (const char* kw : kUnsupported) {
        if (isWord(kw)) unsupported(std::string(kw) == "SELECT" ? "subqueries" : kw);
      }
      if (isPunct("{")) unsupported("nested group patterns");
      std::vector<TriplePattern> triples;
      triplesSameSubject(triples);
      for (auto& t : triples) out.push_back(std::move(t));
      if (acceptPunct(".")) continue;
      // Without a '.', only the end of the group or a non-triples element
      // may follow.
      if (isPunct("}") || isWord("FILTER") || isWord("SERVICE") || isWord("OPTIONAL") ||
          isWord("UNION") || isWord("MINUS") || isWord("BIND") || isWord("VALUES") ||
          isWord("GRAPH")) {
        continue;
      }
      if (isPunct("{")) unsupported("nested group patterns");
      fail("expected '.' or '}'");
    }
  }

  void groupBody(std::vector<GroupElement>& out) {
    groupElements(out, false);
    if (isWord("UNION")) unsupported("UNION");
  }

  Service service() {
    expectWord("SERVICE");
    if (isWord("SILENT")) unsupported("SERVICE SILENT");
    if (peek().kind == Tok::Var) unsupported("variable SERVICE endpoints");
    if (!atIri()) fail("expected SERVICE endpoint IRI");
    Service s;
    s.endpoint = iriOf(take());
    expectPunct("{", "'{'");
    groupElements(s.elements, true);
    return s;
  }

  void triplesSameSubject(std::vector<TriplePattern>& out) {
    if (isPunct("[")) unsupported("blank nodes");
    if (isPunct("(")) unsupported("collections in subject position");
    PatternTerm subject = varOrTerm("subject");
    for (;;) {
      PatternTerm predicate = verb();
      for (;;) {
        out.push_back({subject, predicate, object()});
        if (!acceptPunct(",")) break;
      }
      if (!acceptPunct(";")) return;
      // Trailing ';' is allowed.
      while (acceptPunct(";")) {
      }
      if (peek().kind != Tok::Var && !atIri() && !(peek().kind == Tok::Word && peek().text == "a")) {
        return;
      }
    }
  }

  PatternTerm verb() {
    if (isPunct("^") || isPunct("!") || isPunct("(")) unsupported("property paths");
    PatternTerm p;
    if (peek().kind == Tok::Word && peek().text == "a") {
      take();
      p = rdf::Term::iri(std::string(vocab::rdf::kType));
    } else if (peek().kind == Tok::Var) {
      p = Variable{take().text};
    } else if (atIri()) {
      p = rdf::Term::iri(iriOf(take()));
    } else {
      fail("expected predicate");
    }
    if (isPunct("/") || isPunct("|") || isPunct("*") || isPunct("+")) {
      unsupported("property paths");
    }
    return p;
  }

  PatternTerm object() {
    if (acceptPunct("(")) {
      Collection c;
      while (!acceptPunct(")")) {
        if (peek().kind == Tok::End) fail("expected ')'");
        PatternTerm item = varOrTerm("collection member");
        if (auto* v = std::get_if<Variable>(&item)) {
          c.items.emplace_back(std::move(*v));
        } else {
          c.items.emplace_back(std::get<rdf::Term>(std::move(item)));
        }
      }
      return c;
    }
    if (isPunct("[")) unsupported("blank nodes");
    return varOrTerm("object");
  }

  PatternTerm varOrTerm(const char* what) {
    if (peek().kind == Tok::Var) return Variable{take().text};
    if (atIri()) return rdf::Term::iri(iriOf(take()));
    if (peek().kind == Tok::Word && peek().text == "a") fail(std::string("expected ") + what);
    if (auto lit = literal()) return *lit;
    if (peek().kind == Tok::Word && peek().text.rfind("_", 0) == 0) unsupported("blank nodes");
    fail(std::string("expected ") + what);
  }

  // String, numeric or boolean literal, with an optional leading sign on
  // numbers.
  std::optional<rdf::Term> literal() {
    const Token& t = peek();
    if (t.kind == Tok::String) {
      std::string value = take().text;
      if (peek().kind == Tok::LangTag) return rdf::Term::langLiteral(value, take().text);
      if (acceptPunct("^^")) {
        if (!atIri()) fail("expected datatype IRI");
        return rdf::Term::literal(std::move(value), iriOf(take()));
      }
      return rdf::Term::string(std::move(value));
    }
    if (t.kind == Tok::Word && (t.text == "true" || t.text == "false")) {
      return rdf::Term::literal(take().text, xsd::kBoolean);
    }
    if ((isPunct("-") || isPunct("+")) && isNumber(peek(1))) {
      bool negative = take().text == "-";
      rdf::Term n = number(take());
      return negative ? negate(n) : n;
    }
    if (isNumber(t)) return number(take());
    return std::nullopt;
  }

  static bool isNumber(const Token& t) {
    return t.kind == Tok::Integer || t.kind == Tok::Decimal || t.kind == Tok::Double;
  }

  static rdf::Term number(const Token& t) {
    std::string_view dt = t.kind == Tok::Integer   ? xsd::kInteger
                          : t.kind == Tok::Decimal ? xsd::kDecimal
                                                   : xsd::kDouble;
    return rdf::Term::literal(t.text, dt);
  }

  static rdf::Term negate(const rdf::Term& n) {
    const std::string& v = n.value();
    std::string flipped = !v.empty() && v[0] == '-'   ? v.substr(1)
                          : !v.empty() && v[0] == '+' ? "-" + v.substr(1)
                                                      : "-" + v;
    return rdf::Term::literal(std::move(flipped), n.datatype());
  }

  static bool isNumericLiteral(const Expr& e) {
    if (e.kind != Expr::Kind::Constant || !e.constant.isLiteral()) return false;
    const auto& dt = e.constant.datatype();
    return dt == xsd::kInteger || dt == xsd::kDecimal || dt == xsd::kDouble;
  }

  // FILTER argument: bracketed expression or a bare call.
  Expr constraint() {
    if (acceptPunct("(")) {
      Expr e = expression();
      expectPunct(")", "')'");
      return e;
    }
    if (peek().kind == Tok::Word || atIri()) {
      Expr e = primary();
      if (e.kind != Expr::Kind::Call) fail("expected function call after FILTER");
      return e;
    }
    fail("expected '(' after FILTER");
  }

  Expr expression() {
    Expr lhs = conjunction();
    while (acceptPunct("||")) lhs = Expr::binary(Expr::Op::Or, std::move(lhs), conjunction());
    return lhs;
  }

  Expr conjunction() {
    Expr lhs = relational();
    while (acceptPunct("&&")) lhs = Expr::binary(Expr::Op::And, std::move(lhs), relational());
    return lhs;
  }

  Expr relational() {
    Expr lhs = additive();
    static const std::pair<const char*, Expr::Op> kOps[] = {
        {"=", Expr::Op::Eq},  {"!=", Expr::Op::Ne}, {"<", Expr::Op::Lt},
        {">", Expr::Op::Gt},  {"<=", Expr::Op::Le}, {">=", Expr::Op::Ge}};
    for (const auto& [text, op] : kOps) {
      if (acceptPunct(text)) return Expr::binary(op, std::move(lhs), additive());
    }
    if (isWord("IN") || isWord("NOT")) unsupported("IN");
    return lhs;
  }

  Expr additive() {
    Expr lhs = multiplicative();
    for (;;) {
      if (acceptPunct("+")) {
        lhs = Expr::binary(Expr::Op::Add, std::move(lhs), multiplicative());
      } else if (acceptPunct("-")) {
        lhs = Expr::binary(Expr::Op::Sub, std::move(lhs), multiplicative());
      } else {
        return lhs;
      }
    }
  }

  Expr multiplicative() {
    Expr lhs = unary();
    for (;;) {
      if (acceptPunct("*")) {
        lhs = Expr::binary(Expr::Op::Mul, std::move(lhs), unary());
      } else if (acceptPunct("/")) {
        lhs = Expr::binary(Expr::Op::Div, std::move(lhs), unary());
      } else {
        return lhs;
      }
    }
  }

  Expr unary() {
    if (acceptPunct("!")) return Expr::unary(Expr::Op::Not, unary());
    if (acceptPunct("+")) return unary();
    if (acceptPunct("-")) {
      Expr operand = unary();
      if (isNumericLiteral(operand)) return Expr::lit(negate(operand.constant));
      return Expr::unary(Expr::Op::Neg, std::move(operand));
    }
    return primary();
  }

  std::vector<Expr> arguments(std::size_t arity, const std::string& name) {
    const Token start = peek();
    expectPunct("(", "'('");
    std::vector<Expr> args;
    if (!isPunct(")")) {
      do {
        args.push_back(expression());
      } while (acceptPunct(","));
    }
    expectPunct(")", "')'");
    if (args.size() != arity) {
      throw ParseError(name + " expects " + std::to_string(arity) + " argument" +
                           (arity == 1 ? "" : "s") + ", got " + std::to_string(args.size()),
                       start.line, start.column);
    }
    return args;
  }

  Expr primary() {
    const Token& t = peek();
    if (acceptPunct("(")) {
      Expr e = expression();
      expectPunct(")", "')'");
      return e;
    }
    if (t.kind == Tok::Var) return Expr::var(take().text);
    if (t.kind == Tok::Word && t.text != "true" && t.text != "false") {
      std::string name = upper(t.text);
      if (name == "BOUND") {
        take();
        const Token open = peek();
        auto args = arguments(1, "BOUND");
        if (args[0].kind != Expr::Kind::Variable) {
          throw ParseError("BOUND expects a variable", open.line, open.column);
        }
        return Expr::call(Expr::Fn::Bound, std::move(args));
      }
      if (name == "REGEX") {
        take();
        const Token open = peek();
        expectPunct("(", "'('");
        std::vector<Expr> args{expression()};
        while (acceptPunct(",")) args.push_back(expression());
        expectPunct(")", "')'");
        if (args.size() < 2 || args.size() > 3) {
          throw ParseError("regex expects 2 or 3 arguments, got " + std::to_string(args.size()),
                           open.line, open.column);
        }
        return Expr::call(Expr::Fn::Regex, std::move(args));
      }
      if (name == "STR") {
        take();
        return Expr::call(Expr::Fn::Str, arguments(1, "str"));
      }
      if (name == "YEAR") {
        take();
        return Expr::call(Expr::Fn::Year, arguments(1, "year"));
      }
      if (name == "EXISTS" || name == "NOT") unsupported("EXISTS");
      fail("unknown function '" + t.text + "'");
    }
    if (atIri()) {
      const Token fnTok = take();
      std::string iri = iriOf(fnTok);
      if (isPunct("(")) {
        static const std::string_view kCasts[] = {xsd::kDateTime, xsd::kInteger, xsd::kDouble,
                                                  xsd::kDecimal,  xsd::kString,  xsd::kBoolean};
        for (auto dt : kCasts) {
          if (iri == dt) return Expr::cast(std::move(iri), std::move(arguments(1, iri)[0]));
        }
        throw ParseError("unknown function <" + iri + ">", fnTok.line, fnTok.column);
      }
      return Expr::lit(rdf::Term::iri(std::move(iri)));
    }
    if (auto lit = literal()) return Expr::lit(std::move(*lit));
    if (t.kind == Tok::End) fail("unexpected end of query");
    fail("unexpected '" + t.text + "' in expression");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const std::map<std::string, std::string>* prefixes_ = nullptr;
};

}  // namespace

Query parseQuery(std::string_view text) { return Parser(text).parse(); }

}  // namespace hub::sparql
