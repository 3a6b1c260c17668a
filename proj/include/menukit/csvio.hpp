// SPDX-License-Identifier: MIT
// File plumbing for the CLI: CSV and menu-file serialization, and
// atomic whole-file writes so interrupted runs never leave a truncated
// output behind.
#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "menukit/common.hpp"
#include "menukit/model.hpp"

namespace menukit {

// Shortest decimal form with the requested significant digits; 17
// round-trips a double exactly, 12 is the reporting default.
[[nodiscard]] inline std::string format_num(double v, int digits = 12) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

[[nodiscard]] inline std::string csv_row(
    const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out += ',';
    out += fields[i];
  }
  out += '\n';
  return out;
}

// Writes the whole file under a temporary name, then renames it into
// place; rename within a directory is atomic on POSIX.
inline void write_file_atomic(const std::string& path,
                              const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open for writing: " + tmp);
    f.write(content.data(),
            static_cast<std::streamsize>(content.size()));
    f.flush();
    if (!f) throw std::runtime_error("short write: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot move into place: " + path);
}

[[nodiscard]] inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw parse_error("cannot open file: " + path);
  std::ostringstream out;
  out << f.rdbuf();
  return std::move(out).str();
}

// ==== menu files ===========================================================

[[nodiscard]] inline Menu load_menu(const std::string& path) {
  try {
    return parse_menu_text(read_file(path));
  } catch (const parse_error& e) {
    throw parse_error(path + ": " + e.what());
  }
}

// ==== csv parsing ==========================================================

struct CsvFile {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  [[nodiscard]] std::size_t column_index(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    throw parse_error("no such csv column: " + name);
  }

  [[nodiscard]] std::vector<double> numeric_column(
      const std::string& name) const {
    const std::size_t col = column_index(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const std::vector<std::string>& row : rows) {
      const std::string& cell = row[col];
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0')
        throw parse_error("non-numeric cell '" + cell + "' in column " +
                          name);
      out.push_back(v);
    }
    return out;
  }
};

// Plain comma separation; fields produced by this library never contain
// commas or quotes, and anything raggedly shaped is rejected.
[[nodiscard]] inline CsvFile parse_csv(const std::string& text) {
  CsvFile csv;
  std::istringstream lines(text);
  std::string line;
  const auto split = [](const std::string& s) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : s) {
      if (ch == ',') {
        fields.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    fields.push_back(cur);
    return fields;
  };
  while (std::getline(lines, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (csv.header.empty()) {
      csv.header = split(line);
      continue;
    }
    std::vector<std::string> row = split(line);
    if (row.size() != csv.header.size())
      throw parse_error("csv row has " + std::to_string(row.size()) +
                        " fields, header has " +
                        std::to_string(csv.header.size()));
    csv.rows.push_back(std::move(row));
  }
  if (csv.header.empty()) throw parse_error("csv file has no header");
  return csv;
}

// ==== manifests ============================================================

// Flat key=value lines, in insertion order, so identical runs write
// identical manifests.
[[nodiscard]] inline std::string manifest_text(
    const std::vector<std::pair<std::string, std::string>>& kv) {
  std::string out;
  for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
  return out;
}

}  // namespace menukit
