#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hub/Error.h"
#include "hub/relstore/Value.h"

namespace hub::relstore {

class SqlSyntaxError : public SyntaxError {
 public:
  using SyntaxError::SyntaxError;
};

enum class SqlFunction { None, ToTimestamp, Unnest, StAsText };

struct Projection {
  SqlFunction function = SqlFunction::None;
  std::string column;  // unqualified column name
  std::string alias;   // empty if none

  // Alias if present, otherwise the column name.
  const std::string& outputName() const { return alias.empty() ? column : alias; }
  std::string toSql(std::string_view table) const;
  friend bool operator==(const Projection&, const Projection&) = default;
};

// Equality predicate on a stored column, applied before projection.
struct Constraint {
  std::string column;
  Value value;
  friend bool operator==(const Constraint&, const Constraint&) = default;
};

// The SQL subset used by mapping sources:
//   SELECT proj (, proj)* FROM table
//   proj := [table.]column [AS alias]
//         | (TO_TIMESTAMP|unnest|ST_AsText) ( [table.]column ) [AS alias]
struct SqlQuery {
  std::vector<Projection> projections;
  std::string table;
  std::vector<Constraint> constraints;

  // Renders the query; constraints appear as a WHERE clause.
  std::string toSql() const;
  friend bool operator==(const SqlQuery&, const SqlQuery&) = default;
};

// Keywords and function names are case-insensitive. Qualifiers must name the
// FROM table.
SqlQuery parseSql(std::string_view text);

}  // namespace hub::relstore
