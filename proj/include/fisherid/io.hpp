#pragma once

#include <string>
#include <vector>

#include "fisherid/types.hpp"

namespace fisherid {

struct ParsedTable {
  DataMatrix values;
  bool had_header = false;
  std::vector<std::string> column_names;  // empty when there was no header
};

// Reads a rectangular numeric table: comma- or tab-separated, optional single
// header row, UTF-8, CRLF tolerated. Throws InvalidDataError with a one-line
// diagnostic (including the offending line number) on anything else.
ParsedTable read_table(const std::string& path);

// Shortest decimal string that round-trips to the same double.
std::string format_double(double value);

// Writes content to path via a temporary file and rename, so a partial file
// is never left behind.
void write_text_atomic(const std::string& path, const std::string& content);

// CSV with full round-trip precision; header omitted when names is empty.
// Labels, when present, append one extra column.
void write_table_csv(const std::string& path, const DataMatrix& values,
                     const std::vector<std::string>& names,
                     const std::vector<int>* labels = nullptr,
                     const std::string& label_name = "label");

}  // namespace fisherid
