#include "multising/csv.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "multising/types.hpp"

namespace multising {

namespace {

// Reads one record; false at end of input.
bool read_record(std::istream& in, CsvRow& row, std::size_t& line) {
  row.clear();
  std::string field;
  bool quoted = false, any = false, was_quoted = false;
  char c;
  while (in.get(c)) {
    any = true;
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field += '"';
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    if (c == '"' && field.empty() && !was_quoted) {
      quoted = was_quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      was_quoted = false;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && in.peek() == '\n') in.get(c);
      ++line;
      row.push_back(std::move(field));
      return true;
    } else {
      field += c;
    }
  }
  if (quoted) throw DataError("CSV: unterminated quoted field near line " + std::to_string(line + 1));
  if (!any) return false;
  row.push_back(std::move(field));
  return true;
}

}  // namespace

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t k = 0; k < header.size(); ++k)
    if (header[k] == name) return k;
  throw DataError("CSV has no column named '" + name + "'");
}

bool CsvTable::has_column(const std::string& name) const {
  for (const auto& h : header)
    if (h == name) return true;
  return false;
}

CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::size_t line = 0;
  CsvRow row;
  if (!read_record(in, t.header, line)) throw DataError("CSV input is empty");
  if (!t.header.empty() && t.header[0].rfind("\xEF\xBB\xBF", 0) == 0) t.header[0].erase(0, 3);
  while (read_record(in, row, line)) {
    if (row.size() == 1 && row[0].empty()) continue;  // blank line
    if (row.size() != t.header.size())
      throw DataError("CSV line " + std::to_string(line) + " has " + std::to_string(row.size()) +
                      " fields, header has " + std::to_string(t.header.size()));
    t.rows.push_back(row);
  }
  return t;
}

CsvTable read_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  return read_csv(in);
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_csv_row(std::ostream& out, const CsvRow& row) {
  for (std::size_t k = 0; k < row.size(); ++k) {
    if (k) out << ',';
    out << csv_escape(row[k]);
  }
  out << '\n';
}

}  // namespace multising
