#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace esq {

struct CsvRow {
  std::vector<std::string> fields;
  std::size_t line = 0;  // 1-based line where the record starts
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<CsvRow> rows;

  std::optional<std::size_t> column(std::string_view name) const;
};

/// RFC 4180 reader: header row required, quoted fields may hold commas,
/// doubled quotes and newlines. Ragged rows are rejected with a locator.
CsvTable read_csv(const std::filesystem::path& path);
CsvTable parse_csv(std::string_view data, const std::string& source_name);

/// Quotes a field when it contains a comma, quote or line break.
std::string csv_escape(std::string_view field);

}  // namespace esq
