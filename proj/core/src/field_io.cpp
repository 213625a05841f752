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

#include "lans/field_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "lans/format.hpp"

namespace lans {

void write_field_table(std::ostream& out, const SpectralField& u) {
  const auto& lat = u.lattice();
  out << "# spectral field, normalised measure dx/(2pi)^2, velocity units\n";
  out << "# n=" << lat.n() << "\n";
  out << "k1,k2,re_u1,im_u1,re_u2,im_u2\n";
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto& m = lat.mode(i);
    out << m.k.k1 << ',' << m.k.k2 << ',' << format_double(u[i][0].real()) << ','
        << format_double(u[i][0].imag()) << ',' << format_double(u[i][1].real()) << ','
        << format_double(u[i][1].imag()) << '\n';
  }
}

void write_field_table(const std::string& path, const SpectralField& u) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_field_table(out, u);
}

SpectralField read_field_table(std::istream& in) {
  std::string line;
  int n = -1;
  int lineno = 0;
  auto fail = [&](const std::string& what) {
    throw std::runtime_error("field table line " + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.rfind("# n=", 0) == 0) {
      n = std::stoi(line.substr(4));
      break;
    }
    if (line.empty() || line[0] != '#') fail("missing '# n=' header");
  }
  if (n < 0) fail("missing '# n=' header");
  auto lattice = make_lattice(n);
  std::vector<Vec2c> coeffs(lattice->mode_count(), Vec2c{});
  std::vector<bool> seen(lattice->mode_count(), false);
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != "k1,k2,re_u1,im_u1,re_u2,im_u2") fail("unexpected column header");
      header = true;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 6) fail("expected 6 columns");
    Wavevector k{std::stoi(cells[0]), std::stoi(cells[1])};
    auto pos = lattice->index_of(k);
    if (!pos) fail("wavevector outside retained set");
    if (seen[*pos]) fail("duplicate wavevector");
    seen[*pos] = true;
    coeffs[*pos] = {Complex(parse_double(cells[2]), parse_double(cells[3])),
                    Complex(parse_double(cells[4]), parse_double(cells[5]))};
  }
  SpectralField u(lattice, std::move(coeffs));
  if (invariant_defect(u) > 1e-12) fail("field is not real and divergence-free");
  return u;
}

SpectralField read_field_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  return read_field_table(in);
}

}  // namespace lans
