#pragma once

// Minimal RFC 4180 reader/writer: quoted fields, doubled quotes, CRLF.

#include <iosfwd>
#include <string>
#include <vector>

namespace multising {

using CsvRow = std::vector<std::string>;

struct CsvTable {
  CsvRow header;
  std::vector<CsvRow> rows;

  /// Column index by header name; throws DataError when absent.
  std::size_t column(const std::string& name) const;
  bool has_column(const std::string& name) const;
};

/// First record is the header. Ragged records raise DataError.
CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

std::string csv_escape(const std::string& field);
void write_csv_row(std::ostream& out, const CsvRow& row);

}  // namespace multising
