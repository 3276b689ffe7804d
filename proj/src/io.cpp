#include "fisherid/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string_view>
#include <system_error>

namespace fisherid {

namespace {

std::vector<std::string_view> split_fields(std::string_view line, char delimiter) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(delimiter, start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

std::string_view trim(std::string_view field) {
  while (!field.empty() && (field.front() == ' ' || field.front() == '\r')) {
    field.remove_prefix(1);
  }
  while (!field.empty() && (field.back() == ' ' || field.back() == '\r')) {
    field.remove_suffix(1);
  }
  return field;
}

bool parse_field(std::string_view field, double& out) {
  field = trim(field);
  if (field.empty()) return false;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

}  // namespace

ParsedTable read_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InvalidDataError("cannot open input file: " + path);
  }

  std::vector<std::vector<double>> rows;
  ParsedTable table;
  std::string line;
  std::size_t line_number = 0;
  std::size_t expected_fields = 0;
  char delimiter = ',';
  bool first_line = true;

  while (std::getline(in, line)) {
    ++line_number;
    std::string_view view = trim(line);
    if (first_line) {
      first_line = false;
      if (view.size() >= 3 && view.substr(0, 3) == "\xEF\xBB\xBF") {
        view.remove_prefix(3);  // UTF-8 byte order mark
      }
    }
    if (view.empty()) continue;

    if (rows.empty() && !table.had_header && expected_fields == 0) {
      delimiter = view.find('\t') != std::string_view::npos ? '\t' : ',';
    }
    const auto fields = split_fields(view, delimiter);

    if (expected_fields == 0) {
      // First populated line: either a header or the first data row.
      std::vector<double> parsed(fields.size());
      bool numeric = true;
      for (std::size_t f = 0; f < fields.size(); ++f) {
        if (!parse_field(fields[f], parsed[f])) {
          numeric = false;
          break;
        }
      }
      expected_fields = fields.size();
      if (numeric) {
        rows.push_back(std::move(parsed));
      } else {
        table.had_header = true;
        for (const auto field : fields) {
          table.column_names.emplace_back(trim(field));
        }
      }
      continue;
    }

    if (fields.size() != expected_fields) {
      std::ostringstream message;
      message << path << ":" << line_number << ": expected " << expected_fields
              << " fields, got " << fields.size();
      throw InvalidDataError(message.str());
    }
    std::vector<double> parsed(fields.size());
    for (std::size_t f = 0; f < fields.size(); ++f) {
      if (!parse_field(fields[f], parsed[f])) {
        std::ostringstream message;
        message << path << ":" << line_number << ": field " << (f + 1)
                << " is not a finite number";
        throw InvalidDataError(message.str());
      }
    }
    rows.push_back(std::move(parsed));
  }

  if (rows.empty()) {
    throw InvalidDataError(path + ": no data rows");
  }

  table.values.resize(static_cast<Index>(rows.size()),
                      static_cast<Index>(expected_fields));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < expected_fields; ++c) {
      table.values(static_cast<Index>(r), static_cast<Index>(c)) = rows[r][c];
    }
  }
  return table;
}

std::string format_double(double value) {
  char buffer[32];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc()) {
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
  }
  return std::string(buffer, ptr);
}

void write_text_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot write to " + tmp.string());
    }
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("failed while writing " + tmp.string());
    }
  }
  fs::rename(tmp, target);
}

void write_table_csv(const std::string& path, const DataMatrix& values,
                     const std::vector<std::string>& names,
                     const std::vector<int>* labels, const std::string& label_name) {
  std::ostringstream out;
  if (!names.empty()) {
    for (std::size_t c = 0; c < names.size(); ++c) {
      if (c > 0) out << ',';
      out << names[c];
    }
    if (labels) out << ',' << label_name;
    out << '\n';
  }
  for (Index r = 0; r < values.rows(); ++r) {
    for (Index c = 0; c < values.cols(); ++c) {
      if (c > 0) out << ',';
      out << format_double(values(r, c));
    }
    if (labels) out << ',' << (*labels)[static_cast<std::size_t>(r)];
    out << '\n';
  }
  write_text_atomic(path, out.str());
}

}  // namespace fisherid
