#include "hub/relstore/Database.h"

#include <algorithm>
#include <mutex>
#include <set>

#include "hub/rdf/Lexical.h"

namespace hub::relstore {

std::optional<std::size_t> TableSchema::columnIndex(std::string_view column) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].name == column) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> ResultSet::columnIndex(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  return std::nullopt;
}

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t end = s.find(sep, start);
    if (end == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, end - start));
    start = end + 1;
  }
}

std::string unescape(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && i + 1 < s.size()) {
      char e = s[++i];
      if (e == 't') out += '\t';
      else if (e == 'n') out += '\n';
      else out += e;  // \\ and \|
    } else {
      out += s[i];
    }
  }
  return out;
}

TextArray splitArray(std::string_view field) {
  TextArray out;
  if (field.empty()) return out;
  std::string current;
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (field[i] == '\\' && i + 1 < field.size()) {
      current += field[i];
      current += field[++i];
    } else if (field[i] == '|') {
      out.push_back(unescape(current));
      current.clear();
    } else {
      current += field[i];
    }
  }
  out.push_back(unescape(current));
  return out;
}

std::optional<Value> parseField(std::string_view field, ColumnKind kind) {
  if (field == "\\N") return Value{};
  switch (kind) {
    case ColumnKind::Text: return Value{unescape(field)};
    case ColumnKind::Int64:
    case ColumnKind::EpochSeconds:
      if (auto v = rdf::parseInteger(field)) return Value{*v};
      return std::nullopt;
    case ColumnKind::Float64:
      if (auto v = rdf::parseDouble(field)) return Value{*v};
      return std::nullopt;
    case ColumnKind::Bool:
      if (field == "true" || field == "t") return Value{true};
      if (field == "false" || field == "f") return Value{false};
      return std::nullopt;
    case ColumnKind::TextArray: return Value{splitArray(field)};
    case ColumnKind::WktText: return Value{Wkt{std::string(field)}};
  }
  return std::nullopt;
}

}  // namespace

IngestReport Database::loadFixture(std::string_view document) {
  // Staged tables; committed only if the whole document is valid.
  std::vector<Table> staged;
  std::size_t lineNo = 0;
  std::size_t start = 0;
  std::set<std::string, std::less<>> stagedNames;
  {
    std::shared_lock lock(mutex_);
    while (start <= document.size()) {
      std::size_t end = document.find('\n', start);
      if (end == std::string_view::npos) end = document.size();
      std::string_view line = document.substr(start, end - start);
      ++lineNo;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      start = end + 1;

      if (line.empty() || line.front() == '#') {
        if (end == document.size()) break;
        continue;
      }
      std::size_t sep = line.find_first_of(" \t");
      std::string_view directive = line.substr(0, sep);
      std::string_view rest = sep == std::string_view::npos ? "" : line.substr(sep + 1);

      if (directive == "table") {
        std::string name(rest);
        if (name.empty()) throw FixtureError("table name missing", lineNo);
        if (tables_.count(name) || stagedNames.count(name)) {
          throw FixtureError("duplicate table '" + name + "'", lineNo);
        }
        stagedNames.insert(name);
        staged.push_back(Table{TableSchema{name, {}}, {}});
      } else if (directive == "col") {
        if (staged.empty()) throw FixtureError("unknown table: 'col' before any 'table'", lineNo);
        auto parts = split(rest, ' ');
        if (parts.size() != 2) throw FixtureError("expected 'col <name> <kind>'", lineNo);
        auto kind = parseColumnKind(parts[1]);
        if (!kind) throw FixtureError("unknown column kind '" + std::string(parts[1]) + "'", lineNo);
        auto& schema = staged.back().schema;
        if (!staged.back().rows.empty()) {
          throw FixtureError("column declared after rows in table '" + schema.name + "'", lineNo);
        }
        if (schema.columnIndex(parts[0])) {
          throw FixtureError("duplicate column '" + std::string(parts[0]) + "'", lineNo);
        }
        schema.columns.push_back(Column{std::string(parts[0]), *kind});
      } else if (directive == "row") {
        if (staged.empty()) throw FixtureError("unknown table: 'row' before any 'table'", lineNo);
        auto& table = staged.back();
        auto fields = split(rest, '\t');
        if (fields.size() != table.schema.columns.size()) {
          throw FixtureError("table '" + table.schema.name + "' expects " +
                                 std::to_string(table.schema.columns.size()) + " values, got " +
                                 std::to_string(fields.size()),
                             lineNo);
        }
        Row row;
        row.reserve(fields.size());
        for (std::size_t i = 0; i < fields.size(); ++i) {
          const auto& column = table.schema.columns[i];
          auto value = parseField(fields[i], column.kind);
          if (!value) {
            throw FixtureError("type mismatch in row " + std::to_string(table.rows.size() + 1) +
                                   ": column '" + column.name + "' of table '" +
                                   table.schema.name + "' expects " +
                                   std::string(toString(column.kind)) + ", got '" +
                                   std::string(fields[i]) + "'",
                               lineNo);
          }
          row.push_back(std::move(*value));
        }
        table.rows.push_back(std::move(row));
      } else {
        throw FixtureError("unknown directive '" + std::string(directive) + "'", lineNo);
      }
      if (end == document.size()) break;
    }
  }

  IngestReport report;
  std::unique_lock lock(mutex_);
  for (auto& table : staged) {
    if (tables_.count(table.schema.name)) {
      throw StoreError("duplicate table '" + table.schema.name + "'");
    }
  }
  for (auto& table : staged) {
    report.tables.emplace_back(table.schema.name, table.rows.size());
    order_.push_back(table.schema.name);
    auto name = table.schema.name;
    tables_.emplace(std::move(name), std::move(table));
  }
  return report;
}

void Database::createTable(TableSchema schema) {
  std::set<std::string> seen;
  for (const auto& c : schema.columns) {
    if (!seen.insert(c.name).second) throw StoreError("duplicate column '" + c.name + "'");
  }
  std::unique_lock lock(mutex_);
  if (tables_.count(schema.name)) throw StoreError("duplicate table '" + schema.name + "'");
  order_.push_back(schema.name);
  auto name = schema.name;
  tables_.emplace(std::move(name), Table{std::move(schema), {}});
}

void Database::insert(std::string_view tableName, Row row) {
  std::unique_lock lock(mutex_);
  auto it = tables_.find(tableName);
  if (it == tables_.end()) throw StoreError("unknown table '" + std::string(tableName) + "'");
  const auto& columns = it->second.schema.columns;
  if (row.size() != columns.size()) throw StoreError("row width does not match table schema");
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (!matchesKind(row[i], columns[i].kind)) {
      throw StoreError("type mismatch: column '" + columns[i].name + "' expects " +
                       std::string(toString(columns[i].kind)));
    }
  }
  it->second.rows.push_back(std::move(row));
}

const Database::Table& Database::table(std::string_view name) const {
  auto it = tables_.find(name);
  if (it == tables_.end()) throw StoreError("unknown table '" + std::string(name) + "'");
  return it->second;
}

std::vector<std::size_t> Database::resolve(const Table& table, const SqlQuery& query) {
  std::vector<std::size_t> indices;
  std::size_t unnests = 0;
  for (const auto& p : query.projections) {
    auto index = table.schema.columnIndex(p.column);
    if (!index) {
      throw StoreError("unknown column '" + table.schema.name + "." + p.column + "'");
    }
    ColumnKind kind = table.schema.columns[*index].kind;
    auto mismatch = [&](std::string_view fn, ColumnKind expected) {
      if (kind != expected) {
        throw StoreError(std::string(fn) + " requires a " + std::string(toString(expected)) +
                         " column, '" + p.column + "' is " + std::string(toString(kind)));
      }
    };
    switch (p.function) {
      case SqlFunction::None: break;
      case SqlFunction::ToTimestamp: mismatch("TO_TIMESTAMP", ColumnKind::EpochSeconds); break;
      case SqlFunction::Unnest:
        mismatch("unnest", ColumnKind::TextArray);
        ++unnests;
        break;
      case SqlFunction::StAsText: mismatch("ST_AsText", ColumnKind::WktText); break;
    }
    indices.push_back(*index);
  }
  if (unnests > 1) throw StoreError("at most one unnest() per query is supported");
  for (const auto& c : query.constraints) {
    auto index = table.schema.columnIndex(c.column);
    if (!index) {
      throw StoreError("unknown column '" + table.schema.name + "." + c.column + "'");
    }
    if (!matchesKind(c.value, table.schema.columns[*index].kind)) {
      throw StoreError("constraint value does not match kind of column '" + c.column + "'");
    }
  }
  return indices;
}

void Database::validate(const SqlQuery& query) const {
  std::shared_lock lock(mutex_);
  resolve(table(query.table), query);
}

ResultSet Database::execute(const SqlQuery& query) const {
  std::shared_lock lock(mutex_);
  const Table& t = table(query.table);
  auto indices = resolve(t, query);

  std::vector<std::size_t> constraintIndices;
  for (const auto& c : query.constraints) constraintIndices.push_back(*t.schema.columnIndex(c.column));

  ResultSet result;
  for (const auto& p : query.projections) result.columns.push_back(p.outputName());

  std::optional<std::size_t> unnestAt;
  for (std::size_t i = 0; i < query.projections.size(); ++i) {
    if (query.projections[i].function == SqlFunction::Unnest) unnestAt = i;
  }

  for (const auto& row : t.rows) {
    bool keep = true;
    for (std::size_t i = 0; i < constraintIndices.size() && keep; ++i) {
      const auto& v = row[constraintIndices[i]];
      keep = !isNull(v) && v == query.constraints[i].value;
    }
    if (!keep) continue;

    Row out;
    out.reserve(indices.size());
    for (std::size_t i = 0; i < indices.size(); ++i) {
      const Value& v = row[indices[i]];
      switch (query.projections[i].function) {
        case SqlFunction::None: out.push_back(v); break;
        case SqlFunction::ToTimestamp:
          out.push_back(isNull(v) ? Value{} : Value{Timestamp{std::get<std::int64_t>(v)}});
          break;
        case SqlFunction::StAsText:
          out.push_back(isNull(v) ? Value{} : Value{std::get<Wkt>(v).text});
          break;
        case SqlFunction::Unnest: out.push_back(Value{}); break;  // filled below
      }
    }
    if (!unnestAt) {
      result.rows.push_back(std::move(out));
      continue;
    }
    const Value& array = row[indices[*unnestAt]];
    if (isNull(array)) continue;
    for (const auto& element : std::get<TextArray>(array)) {
      Row expanded = out;
      expanded[*unnestAt] = Value{element};
      result.rows.push_back(std::move(expanded));
    }
  }
  return result;
}

std::optional<TableSchema> Database::schema(std::string_view name) const {
  std::shared_lock lock(mutex_);
  auto it = tables_.find(name);
  if (it == tables_.end()) return std::nullopt;
  return it->second.schema;
}

std::vector<std::string> Database::tableNames() const {
  std::shared_lock lock(mutex_);
  return order_;
}

std::size_t Database::rowCount(std::string_view name) const {
  std::shared_lock lock(mutex_);
  return table(name).rows.size();
}

}  // namespace hub::relstore
