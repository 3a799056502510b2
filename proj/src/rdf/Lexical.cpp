#include "hub/rdf/Lexical.h"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "hub/rdf/Vocabulary.h"

namespace hub::rdf {

namespace {

bool isDigit(char c) { return c >= '0' && c <= '9'; }

// Parses exactly `width` digits at s[pos].
std::optional<int> fixedDigits(std::string_view s, std::size_t pos, std::size_t width) {
  if (pos + width > s.size()) return std::nullopt;
  int v = 0;
  for (std::size_t i = pos; i < pos + width; ++i) {
    if (!isDigit(s[i])) return std::nullopt;
    v = v * 10 + (s[i] - '0');
  }
  return v;
}

}  // namespace

std::optional<std::int64_t> parseInteger(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  std::size_t start = s.front() == '-' ? 1 : 0;
  if (start == s.size()) return std::nullopt;
  for (std::size_t i = start; i < s.size(); ++i) {
    if (!isDigit(s[i])) return std::nullopt;
  }
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<double> parseDouble(std::string_view s) {
  if (s == "INF" || s == "+INF") return HUGE_VAL;
  if (s == "-INF") return -HUGE_VAL;
  if (s == "NaN") return std::nan("");
  std::string_view body = s;
  if (!body.empty() && (body.front() == '+' || body.front() == '-')) body.remove_prefix(1);
  // Mantissa: digits with at most one '.', at least one digit overall.
  std::size_t i = 0;
  std::size_t digits = 0;
  bool dot = false;
  for (; i < body.size(); ++i) {
    if (isDigit(body[i])) {
      ++digits;
    } else if (body[i] == '.' && !dot) {
      dot = true;
    } else {
      break;
    }
  }
  if (digits == 0) return std::nullopt;
  if (i < body.size()) {
    if (body[i] != 'e' && body[i] != 'E') return std::nullopt;
    ++i;
    if (i < body.size() && (body[i] == '+' || body[i] == '-')) ++i;
    if (i == body.size()) return std::nullopt;
    for (; i < body.size(); ++i) {
      if (!isDigit(body[i])) return std::nullopt;
    }
  }
  std::string_view numeric = s.front() == '+' ? s.substr(1) : s;
  double v = 0;
  auto [ptr, ec] = std::from_chars(numeric.data(), numeric.data() + numeric.size(), v);
  if (ptr != numeric.data() + numeric.size()) return std::nullopt;
  if (ec == std::errc::result_out_of_range) {
    return numeric.front() == '-' ? -HUGE_VAL : HUGE_VAL;
  }
  if (ec != std::errc{}) return std::nullopt;
  return v;
}

std::optional<bool> parseBoolean(std::string_view s) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  return std::nullopt;
}

std::optional<DateTime> parseDateTime(std::string_view s) {
  using namespace std::chrono;
  bool negativeYear = !s.empty() && s.front() == '-';
  std::size_t pos = negativeYear ? 1 : 0;
  std::size_t yearStart = pos;
  while (pos < s.size() && isDigit(s[pos])) ++pos;
  std::size_t yearDigits = pos - yearStart;
  if (yearDigits < 4 || (yearDigits > 4 && s[yearStart] == '0')) return std::nullopt;
  std::int64_t yearValue = 0;
  std::from_chars(s.data() + yearStart, s.data() + pos, yearValue);
  if (negativeYear) yearValue = -yearValue;
  if (yearValue < -32767 || yearValue > 32767) return std::nullopt;

  auto expect = [&](char c) {
    if (pos >= s.size() || s[pos] != c) return false;
    ++pos;
    return true;
  };
  if (!expect('-')) return std::nullopt;
  auto month = fixedDigits(s, pos, 2);
  pos += 2;
  if (!month || !expect('-')) return std::nullopt;
  auto day = fixedDigits(s, pos, 2);
  pos += 2;
  if (!day || !expect('T')) return std::nullopt;
  auto hour = fixedDigits(s, pos, 2);
  pos += 2;
  if (!hour || !expect(':')) return std::nullopt;
  auto minute = fixedDigits(s, pos, 2);
  pos += 2;
  if (!minute || !expect(':')) return std::nullopt;
  auto second = fixedDigits(s, pos, 2);
  pos += 2;
  if (!second) return std::nullopt;
  if (*hour > 23 || *minute > 59 || *second > 59) return std::nullopt;

  DateTime dt;
  if (pos < s.size() && s[pos] == '.') {
    std::size_t fracStart = pos;
    ++pos;
    std::size_t digitsStart = pos;
    while (pos < s.size() && isDigit(s[pos])) ++pos;
    if (pos == digitsStart) return std::nullopt;
    std::string frac = "0" + std::string(s.substr(fracStart, pos - fracStart));
    dt.fraction = std::stod(frac);
  }

  std::int64_t offsetSeconds = 0;
  if (pos < s.size()) {
    if (s[pos] == 'Z') {
      ++pos;
      dt.hasTimezone = true;
    } else if (s[pos] == '+' || s[pos] == '-') {
      int sign = s[pos] == '-' ? -1 : 1;
      ++pos;
      auto oh = fixedDigits(s, pos, 2);
      pos += 2;
      if (!oh || !expect(':')) return std::nullopt;
      auto om = fixedDigits(s, pos, 2);
      pos += 2;
      if (!om || *oh > 14 || *om > 59) return std::nullopt;
      offsetSeconds = sign * (*oh * 3600 + *om * 60);
      dt.hasTimezone = true;
    }
  }
  if (pos != s.size()) return std::nullopt;

  year_month_day ymd{year{static_cast<int>(yearValue)}, std::chrono::month{static_cast<unsigned>(*month)},
                     std::chrono::day{static_cast<unsigned>(*day)}};
  if (!ymd.ok()) return std::nullopt;
  std::int64_t days = sys_days{ymd}.time_since_epoch().count();
  dt.epochSeconds = days * 86400 + *hour * 3600 + *minute * 60 + *second - offsetSeconds;
  dt.year = yearValue;
  return dt;
}

std::string formatDouble(double value) {
  if (std::isnan(value)) return "NaN";
  if (std::isinf(value)) return value > 0 ? "INF" : "-INF";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string formatDateTime(std::int64_t epochSeconds) {
  using namespace std::chrono;
  std::int64_t days = epochSeconds / 86400;
  std::int64_t rem = epochSeconds % 86400;
  if (rem < 0) {
    rem += 86400;
    --days;
  }
  year_month_day ymd{sys_days{std::chrono::days{days}}};
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(rem / 3600), static_cast<int>(rem / 60 % 60),
                static_cast<int>(rem % 60));
  return buf;
}

bool isNumericDatatype(std::string_view datatype) {
  return datatype == vocab::xsd::kInteger || datatype == vocab::xsd::kDouble ||
         datatype == vocab::xsd::kDecimal || datatype == vocab::xsd::kFloat;
}

bool isValidLexical(std::string_view lexical, std::string_view datatype) {
  if (datatype == vocab::xsd::kInteger) return parseInteger(lexical).has_value();
  if (datatype == vocab::xsd::kDouble || datatype == vocab::xsd::kFloat) {
    return parseDouble(lexical).has_value();
  }
  if (datatype == vocab::xsd::kDecimal) {
    if (lexical.find_first_of("eEIN") != std::string_view::npos) return false;
    return parseDouble(lexical).has_value();
  }
  if (datatype == vocab::xsd::kBoolean) return parseBoolean(lexical).has_value();
  if (datatype == vocab::xsd::kDateTime) return parseDateTime(lexical).has_value();
  return true;
}

Term canonicalize(const Term& term) {
  if (!term.isLiteral()) return term;
  const auto& dt = term.datatype();
  if (dt == vocab::xsd::kInteger) {
    if (auto v = parseInteger(term.value())) return Term::literal(std::to_string(*v), dt);
  } else if (dt == vocab::xsd::kDouble || dt == vocab::xsd::kFloat || dt == vocab::xsd::kDecimal) {
    if (auto v = parseDouble(term.value())) return Term::literal(formatDouble(*v), dt);
  } else if (dt == vocab::xsd::kBoolean) {
    if (auto v = parseBoolean(term.value())) return Term::literal(*v ? "true" : "false", dt);
  }
  return term;
}

}  // namespace hub::rdf
