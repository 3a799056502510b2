#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hub/Error.h"
#include "hub/relstore/Sql.h"
#include "hub/relstore/Value.h"

namespace hub::relstore {

class StoreError : public Error {
 public:
  using Error::Error;
};

class FixtureError : public SyntaxError {
 public:
  using SyntaxError::SyntaxError;
};

struct Column {
  std::string name;
  ColumnKind kind;
  friend bool operator==(const Column&, const Column&) = default;
};

struct TableSchema {
  std::string name;
  std::vector<Column> columns;

  std::optional<std::size_t> columnIndex(std::string_view column) const;
};

using Row = std::vector<Value>;

// Rows returned by a query; `columns` holds the projection output names.
struct ResultSet {
  std::vector<std::string> columns;
  std::vector<Row> rows;

  std::optional<std::size_t> columnIndex(std::string_view name) const;
};

struct IngestReport {
  std::vector<std::pair<std::string, std::size_t>> tables;  // name, row count
  friend bool operator==(const IngestReport&, const IngestReport&) = default;
};

// Read-side interface of a relational backend.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual ResultSet execute(const SqlQuery& query) const = 0;
  // Throws StoreError if the query does not fit the schema.
  virtual void validate(const SqlQuery& query) const = 0;
  virtual std::optional<TableSchema> schema(std::string_view table) const = 0;
};

// Embedded in-memory database for the SQL subset of SqlQuery. Readers share
// a lock; fixture ingestion is staged and committed under an exclusive lock.
class Database : public Backend {
 public:
  Database() = default;
  Database(const Database&) = delete;
  Database& operator=(const Database&) = delete;

  // Fixture format:
  //   table <name>
  //   col <name> <kind>
  //   row <v1>\t<v2>...
  // Arrays are a|b|c, the empty field is the empty array, \N is NULL.
  // Escapes in values: \\ \t \n \|.
  IngestReport loadFixture(std::string_view document);

  void createTable(TableSchema schema);
  void insert(std::string_view table, Row row);

  ResultSet execute(const SqlQuery& query) const override;
  void validate(const SqlQuery& query) const override;
  std::optional<TableSchema> schema(std::string_view table) const override;

  std::vector<std::string> tableNames() const;
  std::size_t rowCount(std::string_view table) const;

 private:
  struct Table {
    TableSchema schema;
    std::vector<Row> rows;
  };

  // Returns, per projection, the source column index. Throws StoreError.
  static std::vector<std::size_t> resolve(const Table& table, const SqlQuery& query);
  const Table& table(std::string_view name) const;

  mutable std::shared_mutex mutex_;
  std::map<std::string, Table, std::less<>> tables_;
  std::vector<std::string> order_;
};

}  // namespace hub::relstore
