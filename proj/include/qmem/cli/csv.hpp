// Copyright 2026 The qmem Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QMEM_CLI_CSV_HPP
#define QMEM_CLI_CSV_HPP

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qmem/cli/config.hpp"

namespace qmem::cli {

/// Locale-independent, fixed-precision rendering so that repeated runs are
/// byte-identical.
inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

class CsvTable {
 public:
  explicit CsvTable(std::string name, std::vector<std::string> header)
      : name_(std::move(name)), header_(std::move(header)) {}

  using Cell = std::string;

  void add_row(std::vector<Cell> row) {
    if (row.size() != header_.size()) {
      throw std::logic_error("csv: row width does not match header of '" + name_ + "'");
    }
    rows_.push_back(std::move(row));
  }

  const std::string& name() const { return name_; }
  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }

  void write(std::ostream& out) const {
    write_line(out, header_);
    for (const auto& r : rows_) write_line(out, r);
  }

  void write_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw OutputPathError(path);
    write(out);
    out.flush();
    if (!out) throw OutputPathError(path);
  }

 private:
  static void write_line(std::ostream& out, const std::vector<Cell>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      out << cells[i];
    }
    out << '\n';
  }

  std::string name_;
  std::vector<std::string> header_;
  std::vector<std::vector<Cell>> rows_;
};

inline std::string num(double v) { return format_number(v); }

}  // namespace qmem::cli

#endif  // QMEM_CLI_CSV_HPP
