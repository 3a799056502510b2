#include "hub/rewriter/Expression.h"

#include <charconv>
#include <cmath>
#include <map>
#include <regex>

#include "hub/rdf/Lexical.h"
#include "hub/rdf/Vocabulary.h"

namespace hub::rewriter {

namespace {

namespace xsd = vocab::xsd;
using sparql::Expr;
using Result = std::optional<rdf::Term>;

struct Number {
  enum class Type { Integer, Decimal, Double } type;
  std::int64_t i = 0;
  double d = 0;

  double asDouble() const { return type == Type::Integer ? static_cast<double>(i) : d; }
};

std::optional<Number> numberOf(const rdf::Term& t) {
  if (!t.isLiteral()) return std::nullopt;
  const auto& dt = t.datatype();
  if (dt == xsd::kInteger) {
    if (auto v = rdf::parseInteger(t.value())) return Number{Number::Type::Integer, *v, 0};
    return std::nullopt;
  }
  if (dt == xsd::kDecimal) {
    if (auto v = rdf::parseDouble(t.value())) return Number{Number::Type::Decimal, 0, *v};
    return std::nullopt;
  }
  if (dt == xsd::kDouble || dt == xsd::kFloat) {
    if (auto v = rdf::parseDouble(t.value())) return Number{Number::Type::Double, 0, *v};
  }
  return std::nullopt;
}

std::string fixed(double d) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof(buf), d, std::chars_format::fixed);
  return std::string(buf, r.ptr);
}

rdf::Term integerTerm(std::int64_t v) {
  return rdf::Term::literal(std::to_string(v), xsd::kInteger);
}

Result render(const Number& n) {
  switch (n.type) {
    case Number::Type::Integer: return integerTerm(n.i);
    case Number::Type::Decimal:
      if (!std::isfinite(n.d)) return std::nullopt;
      return rdf::Term::literal(fixed(n.d), xsd::kDecimal);
    case Number::Type::Double: return rdf::Term::literal(rdf::formatDouble(n.d), xsd::kDouble);
  }
  return std::nullopt;
}

bool isStringLike(const rdf::Term& t) {
  return t.isLiteral() && (t.datatype() == xsd::kString || t.hasLanguage());
}

Result arithmetic(Expr::Op op, const Number& a, const Number& b) {
  auto type = std::max(a.type, b.type);
  if (type == Number::Type::Integer && op != Expr::Op::Div) {
    std::int64_t r = 0;
    bool overflow = false;
    switch (op) {
      case Expr::Op::Add: overflow = __builtin_add_overflow(a.i, b.i, &r); break;
      case Expr::Op::Sub: overflow = __builtin_sub_overflow(a.i, b.i, &r); break;
      case Expr::Op::Mul: overflow = __builtin_mul_overflow(a.i, b.i, &r); break;
      default: return std::nullopt;
    }
    if (overflow) return std::nullopt;
    return integerTerm(r);
  }
  if (type == Number::Type::Integer) type = Number::Type::Decimal;  // integer division
  double x = a.asDouble();
  double y = b.asDouble();
  double r = 0;
  switch (op) {
    case Expr::Op::Add: r = x + y; break;
    case Expr::Op::Sub: r = x - y; break;
    case Expr::Op::Mul: r = x * y; break;
    case Expr::Op::Div:
      if (y == 0 && type == Number::Type::Decimal) return std::nullopt;
      r = x / y;
      break;
    default: return std::nullopt;
  }
  return render(Number{type, 0, r});
}

// -1, 0, 1 for ordered comparisons; nullopt if incomparable.
std::optional<int> compare(const rdf::Term& a, const rdf::Term& b) {
  auto na = numberOf(a);
  auto nb = numberOf(b);
  if (na && nb) {
    if (na->type == Number::Type::Integer && nb->type == Number::Type::Integer) {
      return na->i < nb->i ? -1 : na->i > nb->i ? 1 : 0;
    }
    double x = na->asDouble();
    double y = nb->asDouble();
    if (std::isnan(x) || std::isnan(y)) return std::nullopt;
    return x < y ? -1 : x > y ? 1 : 0;
  }
  if (!a.isLiteral() || !b.isLiteral()) return std::nullopt;
  if (a.datatype() == xsd::kDateTime && b.datatype() == xsd::kDateTime) {
    auto x = rdf::parseDateTime(a.value());
    auto y = rdf::parseDateTime(b.value());
    if (!x || !y) return std::nullopt;
    return *x < *y ? -1 : *y < *x ? 1 : 0;
  }
  if (a.datatype() == xsd::kString && b.datatype() == xsd::kString) {
    int c = a.value().compare(b.value());
    return c < 0 ? -1 : c > 0 ? 1 : 0;
  }
  if (a.datatype() == xsd::kBoolean && b.datatype() == xsd::kBoolean) {
    auto x = rdf::parseBoolean(a.value());
    auto y = rdf::parseBoolean(b.value());
    if (!x || !y) return std::nullopt;
    return *x == *y ? 0 : (*x ? 1 : -1);
  }
  return std::nullopt;
}

std::optional<bool> equals(const rdf::Term& a, const rdf::Term& b) {
  if (auto c = compare(a, b)) return *c == 0;
  if (a == b) return true;
  if (a.isIri() || b.isIri()) return false;
  if (a.hasLanguage() && b.hasLanguage()) return false;
  return std::nullopt;
}

const std::regex* compiledRegex(const std::string& pattern, const std::string& flags) {
  thread_local std::map<std::pair<std::string, std::string>, std::optional<std::regex>> cache;
  auto key = std::make_pair(pattern, flags);
  auto it = cache.find(key);
  if (it == cache.end()) {
    std::optional<std::regex> re;
    auto syntax = std::regex::ECMAScript;
    bool ok = true;
    for (char f : flags) {
      if (f == 'i') syntax |= std::regex::icase;
      else if (f == 'm') syntax |= std::regex::multiline;
      else if (f != 's' && f != 'x') ok = false;
    }
    if (ok) {
      try {
        re.emplace(pattern, syntax);
      } catch (const std::regex_error&) {
      }
    }
    if (cache.size() > 256) cache.clear();
    it = cache.emplace(std::move(key), std::move(re)).first;
  }
  return it->second ? &*it->second : nullptr;
}

Result cast(const std::string& target, const rdf::Term& v) {
  if (target == xsd::kString) return rdf::Term::string(v.value());
  if (!v.isLiteral() || v.hasLanguage()) return std::nullopt;
  const auto& dt = v.datatype();
  const auto num = numberOf(v);
  const bool fromString = dt == xsd::kString;
  const bool fromBool = dt == xsd::kBoolean;

  if (target == xsd::kDateTime) {
    if ((fromString || dt == xsd::kDateTime) && rdf::parseDateTime(v.value())) {
      return rdf::Term::literal(v.value(), xsd::kDateTime);
    }
    return std::nullopt;
  }
  if (target == xsd::kInteger) {
    if (num && num->type == Number::Type::Integer) return integerTerm(num->i);
    if (num) {
      double t = std::trunc(num->d);
      if (!std::isfinite(t) || std::fabs(t) >= 9.2e18) return std::nullopt;
      return integerTerm(static_cast<std::int64_t>(t));
    }
    if (fromString) {
      if (auto i = rdf::parseInteger(v.value())) return integerTerm(*i);
      return std::nullopt;
    }
    if (fromBool) {
      if (auto b = rdf::parseBoolean(v.value())) return integerTerm(*b ? 1 : 0);
    }
    return std::nullopt;
  }
  if (target == xsd::kDouble || target == xsd::kDecimal) {
    const auto type = target == xsd::kDouble ? Number::Type::Double : Number::Type::Decimal;
    if (num) return render(Number{type, 0, num->asDouble()});
    if (fromString) {
      const auto& s = v.value();
      if (type == Number::Type::Decimal && s.find_first_of("eEIN") != std::string::npos) {
        return std::nullopt;
      }
      if (auto d = rdf::parseDouble(s)) return render(Number{type, 0, *d});
      return std::nullopt;
    }
    if (fromBool) {
      if (auto b = rdf::parseBoolean(v.value())) return render(Number{type, 0, *b ? 1.0 : 0.0});
    }
    return std::nullopt;
  }
  if (target == xsd::kBoolean) {
    if (num) {
      double d = num->asDouble();
      return rdf::Term::literal(d != 0 && !std::isnan(d) ? "true" : "false", xsd::kBoolean);
    }
    if (fromString || fromBool) {
      if (auto b = rdf::parseBoolean(v.value())) {
        return rdf::Term::literal(*b ? "true" : "false", xsd::kBoolean);
      }
    }
    return std::nullopt;
  }
  return std::nullopt;
}

rdf::Term boolean(bool b) { return rdf::Term::literal(b ? "true" : "false", xsd::kBoolean); }

std::optional<bool> ebvOf(const Expr& e, const Solution& s) {
  auto v = evalExpr(e, s);
  if (!v) return std::nullopt;
  return effectiveBoolean(*v);
}

}  // namespace

std::optional<bool> effectiveBoolean(const rdf::Term& t) {
  if (!t.isLiteral()) return std::nullopt;
  if (t.datatype() == xsd::kBoolean) return rdf::parseBoolean(t.value()).value_or(false);
  if (rdf::isNumericDatatype(t.datatype())) {
    auto n = numberOf(t);
    if (!n) return false;
    double d = n->asDouble();
    return d != 0 && !std::isnan(d);
  }
  if (isStringLike(t)) return !t.value().empty();
  return std::nullopt;
}

std::optional<rdf::Term> evalExpr(const Expr& e, const Solution& s) {
  switch (e.kind) {
    case Expr::Kind::Variable: {
      auto it = s.find(e.variable);
      if (it == s.end()) return std::nullopt;
      return it->second;
    }
    case Expr::Kind::Constant: return e.constant;
    case Expr::Kind::Operator: {
      if (e.op == Expr::Op::Or || e.op == Expr::Op::And) {
        auto a = ebvOf(e.args[0], s);
        auto b = ebvOf(e.args[1], s);
        if (e.op == Expr::Op::Or) {
          if ((a && *a) || (b && *b)) return boolean(true);
          if (a && b) return boolean(false);
          return std::nullopt;
        }
        if ((a && !*a) || (b && !*b)) return boolean(false);
        if (a && b) return boolean(true);
        return std::nullopt;
      }
      if (e.op == Expr::Op::Not) {
        auto a = ebvOf(e.args[0], s);
        if (!a) return std::nullopt;
        return boolean(!*a);
      }
      auto a = evalExpr(e.args[0], s);
      if (!a) return std::nullopt;
      if (e.op == Expr::Op::Neg) {
        auto n = numberOf(*a);
        if (!n) return std::nullopt;
        if (n->type == Number::Type::Integer) {
          if (n->i == INT64_MIN) return std::nullopt;
          return integerTerm(-n->i);
        }
        n->d = -n->d;
        return render(*n);
      }
      auto b = evalExpr(e.args[1], s);
      if (!b) return std::nullopt;
      switch (e.op) {
        case Expr::Op::Eq:
        case Expr::Op::Ne: {
          auto eq = equals(*a, *b);
          if (!eq) return std::nullopt;
          return boolean(e.op == Expr::Op::Eq ? *eq : !*eq);
        }
        case Expr::Op::Lt:
        case Expr::Op::Gt:
        case Expr::Op::Le:
        case Expr::Op::Ge: {
          auto c = compare(*a, *b);
          if (!c) return std::nullopt;
          bool r = e.op == Expr::Op::Lt   ? *c < 0
                   : e.op == Expr::Op::Gt ? *c > 0
                   : e.op == Expr::Op::Le ? *c <= 0
                                          : *c >= 0;
          return boolean(r);
        }
        default: {
          auto na = numberOf(*a);
          auto nb = numberOf(*b);
          if (!na || !nb) return std::nullopt;
          return arithmetic(e.op, *na, *nb);
        }
      }
    }
    case Expr::Kind::Call: {
      if (e.fn == Expr::Fn::Bound) return boolean(s.count(e.args[0].variable) > 0);
      std::vector<rdf::Term> args;
      for (const auto& a : e.args) {
        auto v = evalExpr(a, s);
        if (!v) return std::nullopt;
        args.push_back(std::move(*v));
      }
      switch (e.fn) {
        case Expr::Fn::Str:
          if (args[0].isLiteral() || args[0].isIri()) return rdf::Term::string(args[0].value());
          return std::nullopt;
        case Expr::Fn::Regex: {
          if (!isStringLike(args[0]) || args[1].datatype() != xsd::kString) return std::nullopt;
          std::string flags;
          if (args.size() == 3) {
            if (args[2].datatype() != xsd::kString) return std::nullopt;
            flags = args[2].value();
          }
          const std::regex* re = compiledRegex(args[1].value(), flags);
          if (!re) return std::nullopt;
          return boolean(std::regex_search(args[0].value(), *re));
        }
        case Expr::Fn::Year: {
          if (!args[0].isLiteral() || args[0].datatype() != xsd::kDateTime) return std::nullopt;
          auto dt = rdf::parseDateTime(args[0].value());
          if (!dt) return std::nullopt;
          return integerTerm(dt->year);
        }
        case Expr::Fn::Cast: return cast(e.castTarget, args[0]);
        case Expr::Fn::Bound: break;
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

bool passesFilter(const Expr& e, const Solution& s) { return ebvOf(e, s).value_or(false); }

}  // namespace hub::rewriter
