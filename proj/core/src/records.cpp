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

#include "lans/records.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

#include "lans/format.hpp"

namespace lans {

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "ndjson") return OutputFormat::ndjson;
  throw std::invalid_argument("unknown output format '" + name + "' (expected csv or ndjson)");
}

std::string extension(OutputFormat format) { return format == OutputFormat::csv ? "csv" : "ndjson"; }

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::invalid_argument("table " + name + ": row width differs from columns");
  rows.push_back(std::move(row));
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

// Splits a CSV line; quoted cells come back as labels.
std::vector<Cell> split_cells(const std::string& line, int lineno);

[[noreturn]] void parse_error(int line, const std::string& msg) {
  throw std::runtime_error("line " + std::to_string(line) + ": " + msg);
}

std::vector<Cell> split_cells(const std::string& line, int lineno) {
  std::vector<Cell> out;
  std::size_t i = 0;
  while (true) {
    if (i < line.size() && line[i] == '"') {
      std::string text;
      ++i;
      while (true) {
        if (i >= line.size()) parse_error(lineno, "unterminated quoted cell");
        if (line[i] == '"') {
          if (i + 1 < line.size() && line[i + 1] == '"') {
            text += '"';
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        text += line[i++];
      }
      out.emplace_back(std::move(text));
    } else {
      const std::size_t end = std::min(line.find(',', i), line.size());
      try {
        out.emplace_back(parse_double(std::string_view(line).substr(i, end - i)));
      } catch (const std::invalid_argument& e) {
        parse_error(lineno, e.what());
      }
      i = end;
    }
    if (i >= line.size()) break;
    if (line[i] != ',') parse_error(lineno, "expected ',' after a cell");
    ++i;
  }
  return out;
}

void write_cell(std::ostream& out, const Cell& cell) {
  if (const auto* v = std::get_if<double>(&cell)) {
    out << format_double(*v);
    return;
  }
  out << '"';
  for (char ch : std::get<std::string>(cell)) {
    if (ch == '"') out << '"';
    out << ch;
  }
  out << '"';
}

}  // namespace

void write_csv(std::ostream& out, const Table& table) {
  out << "# table: " << table.name << "\n# units: ";
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i].unit;
  out << "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i].name;
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      write_cell(out, row[i]);
    }
    out << "\n";
  }
}

Table read_csv(std::istream& in) {
  Table t;
  std::string line;
  int lineno = 0;
  std::vector<std::string> units;
  bool have_columns = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.rfind("# table: ", 0) == 0) {
      t.name = line.substr(9);
    } else if (line.rfind("# units: ", 0) == 0) {
      units = split(line.substr(9), ',');
    } else if (line.empty() || line[0] == '#') {
      continue;
    } else if (!have_columns) {
      const auto names = split(line, ',');
      if (units.size() != names.size()) parse_error(lineno, "units header does not match the columns");
      for (std::size_t i = 0; i < names.size(); ++i) t.columns.push_back({names[i], units[i]});
      have_columns = true;
    } else {
      auto cells = split_cells(line, lineno);
      if (cells.size() != t.columns.size()) parse_error(lineno, "expected " + std::to_string(t.columns.size()) + " cells");
      t.rows.push_back(std::move(cells));
    }
  }
  if (!have_columns) throw std::runtime_error("csv table has no column header");
  return t;
}

void write_ndjson(std::ostream& out, const Table& table) {
  nlohmann::ordered_json header;
  header["table"] = table.name;
  header["columns"] = nlohmann::json::array();
  header["units"] = nlohmann::json::array();
  for (const auto& c : table.columns) {
    header["columns"].push_back(c.name);
    header["units"].push_back(c.unit);
  }
  out << header.dump() << "\n";
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::visit([&](const auto& v) { obj[table.columns[i].name] = v; }, row[i]);
    }
    out << obj.dump() << "\n";
  }
}

Table read_ndjson(std::istream& in) {
  Table t;
  std::string line;
  int lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      parse_error(lineno, e.what());
    }
    if (!have_header) {
      if (!obj.contains("table") || !obj.contains("columns") || !obj.contains("units")) {
        parse_error(lineno, "expected the table header object");
      }
      t.name = obj["table"].get<std::string>();
      const auto& names = obj["columns"];
      const auto& units = obj["units"];
      if (names.size() != units.size()) parse_error(lineno, "units do not match the columns");
      for (std::size_t i = 0; i < names.size(); ++i) {
        t.columns.push_back({names[i].get<std::string>(), units[i].get<std::string>()});
      }
      have_header = true;
      continue;
    }
    std::vector<Cell> row;
    for (const auto& c : t.columns) {
      if (!obj.contains(c.name)) parse_error(lineno, "missing field '" + c.name + "'");
      const auto& v = obj[c.name];
      if (v.is_string()) {
        row.emplace_back(v.get<std::string>());
      } else if (v.is_null()) {
        row.emplace_back(std::numeric_limits<double>::quiet_NaN());
      } else {
        row.emplace_back(v.get<double>());
      }
    }
    t.rows.push_back(std::move(row));
  }
  if (!have_header) throw std::runtime_error("ndjson table has no header line");
  return t;
}

std::filesystem::path write_outputs(const Table& table, OutputFormat format, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const auto path = dir / (table.name + "." + extension(format));
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  if (format == OutputFormat::csv) {
    write_csv(out, table);
  } else {
    write_ndjson(out, table);
  }
  out.flush();
  if (!out) throw std::runtime_error(path.string() + ": write failed");
  return path;
}

Table trajectory_table(const TrajectoryRecord& record, const std::string& name) {
  Table t;
  t.name = name;
  t.columns = {{"step", "1"},           {"time", "T"},          {"norm_h", "L/T"},
               {"norm_v", "1/T"},       {"norm_a", "1/(L T)"},  {"norm_alpha", "L/T"},
               {"dissipation", "1/T"}};
  for (const auto& p : record.points) {
    t.add_row({static_cast<double>(p.step), p.time, p.norm_h, p.norm_v, p.norm_a, p.norm_alpha, p.dissipation});
  }
  return t;
}

TrajectoryRecord trajectory_from_table(const Table& table) {
  static const char* const expected[] = {"step", "time", "norm_h", "norm_v", "norm_a", "norm_alpha", "dissipation"};
  if (table.columns.size() != 7) throw std::invalid_argument("not a trajectory table");
  for (std::size_t i = 0; i < 7; ++i) {
    if (table.columns[i].name != expected[i]) throw std::invalid_argument("not a trajectory table");
  }
  TrajectoryRecord rec;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    TrajectoryPoint p;
    p.step = static_cast<int>(table.number(i, 0));
    p.time = table.number(i, 1);
    p.norm_h = table.number(i, 2);
    p.norm_v = table.number(i, 3);
    p.norm_a = table.number(i, 4);
    p.norm_alpha = table.number(i, 5);
    p.dissipation = table.number(i, 6);
    rec.points.push_back(p);
  }
  return rec;
}

}  // namespace lans
