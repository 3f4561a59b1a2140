#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace drmst {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<int> row_lines;  // 1-based source line of each row

  // Index of a header column, -1 if absent.
  int column(const std::string& name) const;
};

// Reads delimiter-separated text with a header row. Fields may be quoted
// with double quotes ("" escapes a quote); quoted fields may contain the
// delimiter but not newlines.
CsvTable read_csv(std::istream& in, char delimiter = ',');

// Writes one CSV row, quoting fields that contain the delimiter or quotes.
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields,
                   char delimiter = ',');

// Splits "a, b, c" into trimmed tokens; empty input gives an empty list.
std::vector<std::string> split_list(const std::string& text, char sep = ',');

std::string trim(const std::string& s);

}  // namespace drmst
