#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace hub::relstore {

enum class ColumnKind { Text, Int64, Float64, Bool, EpochSeconds, TextArray, WktText };

std::string_view toString(ColumnKind kind);
std::optional<ColumnKind> parseColumnKind(std::string_view name);

// Calendar timestamp produced by TO_TIMESTAMP.
struct Timestamp {
  std::int64_t epochSeconds = 0;
  friend auto operator<=>(const Timestamp&, const Timestamp&) = default;
};

struct Wkt {
  std::string text;
  friend auto operator<=>(const Wkt&, const Wkt&) = default;
};

using TextArray = std::vector<std::string>;

// A cell value. std::monostate is SQL NULL. Epoch-seconds columns hold
// std::int64_t.
using Value = std::variant<std::monostate, std::string, std::int64_t, double, bool, Timestamp,
                           TextArray, Wkt>;

inline bool isNull(const Value& v) { return std::holds_alternative<std::monostate>(v); }

// True if `v` is NULL or has the representation `kind` stores.
bool matchesKind(const Value& v, ColumnKind kind);

// Human-readable rendering for diagnostics and the translate command.
std::string describe(const Value& v);

// SQL literal rendering, e.g. 'f1', 42, TRUE.
std::string toSqlLiteral(const Value& v);

}  // namespace hub::relstore
