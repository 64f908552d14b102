#include "esq/csv.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "esq/error.hpp"

namespace esq {
namespace {

std::string locator(const std::string& source, std::size_t line) { return source + ":" + std::to_string(line); }

}  // namespace

std::optional<std::size_t> CsvTable::column(std::string_view name) const {
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) return std::nullopt;
  return static_cast<std::size_t>(it - header.begin());
}

CsvTable parse_csv(std::string_view data, const std::string& source) {
  std::vector<CsvRow> records;
  CsvRow current;
  current.line = 1;
  std::string field;
  std::size_t line = 1;
  bool in_quotes = false;
  bool quoted = false;

  auto end_field = [&] {
    current.fields.push_back(std::move(field));
    field.clear();
    quoted = false;
  };
  auto end_record = [&] {
    end_field();
    if (!(current.fields.size() == 1 && current.fields[0].empty())) records.push_back(std::move(current));
    current = CsvRow{};
    current.line = line;
  };

  for (std::size_t i = 0; i < data.size(); ++i) {
    const char ch = data[i];
    if (in_quotes) {
      if (ch == '"') {
        if (i + 1 < data.size() && data[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (ch == '\n') ++line;
        field.push_back(ch);
      }
      continue;
    }
    switch (ch) {
      case '"':
        if (!field.empty() || quoted) throw Error(locator(source, line) + ": unexpected quote inside unquoted field");
        in_quotes = true;
        quoted = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        break;
      case '\n':
        ++line;
        end_record();
        break;
      default:
        if (quoted) throw Error(locator(source, line) + ": characters after closing quote");
        field.push_back(ch);
    }
  }
  if (in_quotes) throw Error(locator(source, current.line) + ": unterminated quoted field");
  if (!field.empty() || !current.fields.empty() || quoted) end_record();

  if (records.empty()) throw Error(source + ": missing CSV header row");
  CsvTable table;
  table.header = std::move(records.front().fields);
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].fields.size() != table.header.size())
      throw Error(locator(source, records[r].line) + ": expected " + std::to_string(table.header.size()) +
                  " fields, found " + std::to_string(records[r].fields.size()));
    table.rows.push_back(std::move(records[r]));
  }
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str(), path.string());
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string q = "\"";
  for (char c : field) {
    if (c == '"') q.push_back('"');
    q.push_back(c);
  }
  q.push_back('"');
  return q;
}

}  // namespace esq
