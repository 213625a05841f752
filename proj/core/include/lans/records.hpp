// Copyright 2026 The lans-alpha Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "lans/solver.hpp"

namespace lans {

enum class OutputFormat { csv, ndjson };

/// Throws std::invalid_argument for anything but "csv" or "ndjson".
OutputFormat parse_format(const std::string& name);
std::string extension(OutputFormat format);

struct Column {
  std::string name;
  std::string unit;  // "1" for dimensionless counts and indices
};

/// A cell holds a number or a label (check names, event descriptions).
using Cell = std::variant<double, std::string>;

/// Table with a fixed column order; the unit of exchange between the
/// solvers and the writers.
struct Table {
  std::string name;
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
  double number(std::size_t row, std::size_t col) const { return std::get<double>(rows.at(row).at(col)); }
};

/// CSV: "# table: <name>", "# units: u1,u2,...", the column names, then one
/// row per record, every float at 17 significant digits and every label in
/// double quotes.
void write_csv(std::ostream& out, const Table& table);
Table read_csv(std::istream& in);

/// NDJSON: a header object {"table", "columns", "units"} followed by one
/// object per row; each line parses on its own.
void write_ndjson(std::ostream& out, const Table& table);
Table read_ndjson(std::istream& in);

/// Writes <dir>/<table.name>.<ext>; throws std::runtime_error when the
/// path cannot be written. Returns the path written.
std::filesystem::path write_outputs(const Table& table, OutputFormat format, const std::filesystem::path& dir);

Table trajectory_table(const TrajectoryRecord& record, const std::string& name = "trajectory");
TrajectoryRecord trajectory_from_table(const Table& table);

}  // namespace lans
