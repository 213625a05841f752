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

#include <doctest.h>

#include <cmath>
#include <set>
#include <stdexcept>

#include "lans/bilinear.hpp"
#include "lans/lattice.hpp"
#include "lans/operator_checks.hpp"
#include "lans/random.hpp"
#include "lans/spectral_field.hpp"

using namespace lans;

namespace {

double rel_diff(const SpectralField& a, const SpectralField& b) {
  return norm_h(a - b) / std::max(norm_h(a), 1e-300);
}

}  // namespace

TEST_CASE("lattice retains the two-thirds mask without the mean mode") {
  for (int n : {4, 6, 8, 16, 32}) {
    const auto lat = make_lattice(n);
    CHECK(lat->max_wavenumber() == n / 3);
    for (std::size_t i = 0; i < lat->mode_count(); ++i) {
      const auto& m = lat->mode(i);
      CHECK(lat->dealias_mask(m.k));
      CHECK_FALSE((m.k.k1 == 0 && m.k.k2 == 0));
      CHECK(m.eigenvalue == doctest::Approx(m.k.k1 * m.k.k1 + m.k.k2 * m.k.k2));
      const auto& c = lat->mode(m.conjugate);
      CHECK(c.k.k1 == -m.k.k1);
      CHECK(c.k.k2 == -m.k.k2);
      CHECK(lat->mode(c.conjugate).k == m.k);
    }
    const int kmax = n / 3;
    CHECK(lat->mode_count() == static_cast<std::size_t>((2 * kmax + 1) * (2 * kmax + 1) - 1));
    CHECK(lat->grid_size() >= 3 * kmax + 1);
  }
}

TEST_CASE("lattice grid keeps the caller's size when it is already alias-free") {
  CHECK(make_lattice(32)->grid_size() == 32);
  CHECK(make_lattice(6)->grid_size() > 6);
}

TEST_CASE("lattice rejects odd or tiny sizes") {
  CHECK_THROWS_AS(TorusLattice(5), std::invalid_argument);
  CHECK_THROWS_AS(TorusLattice(2), std::invalid_argument);
  CHECK_FALSE(make_lattice(8)->index_of({3, 0}).has_value());
  CHECK(make_lattice(8)->index_of({2, -2}).has_value());
}

TEST_CASE("make_lattice caches instances") { CHECK(make_lattice(16) == make_lattice(16)); }

TEST_CASE("single modes are unit, admissible and steady under B") {
  const auto lat = make_lattice(16);
  for (Wavevector k : {Wavevector{1, 0}, Wavevector{2, 3}, Wavevector{-1, 4}}) {
    for (Phase p : {Phase::cosine, Phase::sine}) {
      const auto u = single_mode(lat, k, p);
      CHECK(norm_h(u) == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(invariant_defect(u) <= 1e-15);
      CHECK(physical_l2_norm(u) == doctest::Approx(1.0).epsilon(1e-13));
      const double lam = k.k1 * k.k1 + k.k2 * k.k2;
      CHECK(norm_v(u) == doctest::Approx(std::sqrt(lam)).epsilon(1e-13));
      CHECK(norm_a(u) == doctest::Approx(lam).epsilon(1e-13));
      CHECK(norm_h(bilinear_b(u, u)) <= 1e-13);
    }
  }
}

TEST_CASE("cosine and sine modes are orthogonal") {
  const auto lat = make_lattice(8);
  CHECK(std::abs(inner_h(single_mode(lat, {1, 1}, Phase::cosine), single_mode(lat, {1, 1}, Phase::sine))) <= 1e-15);
}

TEST_CASE("random fields are normalised and admissible") {
  const auto lat = make_lattice(16);
  Engine e = make_engine(3, 0);
  for (int t = 0; t < 10; ++t) {
    const auto u = random_field(lat, e);
    CHECK(norm_h(u) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(invariant_defect(u) <= 1e-14);
  }
  Engine e2 = make_engine(3, 0);
  Engine e3 = make_engine(3, 0);
  CHECK(rel_diff(random_field(lat, e2, 1.0, false), random_field(lat, e3, 1.0, false)) == 0.0);
}

TEST_CASE("stream seeds depend only on master and index") {
  CHECK(stream_seed(5, 7) == stream_seed(5, 7));
  std::set<std::uint64_t> seen;
  for (std::uint64_t m = 0; m < 4; ++m) {
    for (std::uint64_t i = 0; i < 256; ++i) seen.insert(stream_seed(m, i));
  }
  CHECK(seen.size() == 4 * 256);
}

TEST_CASE("Leray projection removes gradients and is idempotent") {
  const auto lat = make_lattice(12);
  VectorSpectrum grad(lat);
  for (std::size_t i = 0; i < lat->mode_count(); ++i) {
    const auto k = lat->mode(i).k;
    // i k phi(k) with phi(-k) = conj(phi(k)) is the gradient of a real scalar
    const Complex phi = k.k1 >= 0 ? Complex(1.0 + k.k2, 0.5 * k.k1) : Complex(1.0 - k.k2, 0.5 * k.k1);
    grad.coeffs[i] = {Complex(0, k.k1) * phi, Complex(0, k.k2) * phi};
  }
  CHECK(norm_h(project_leray(grad)) <= 1e-14);

  Engine e = make_engine(1, 1);
  const auto u = random_field(lat, e);
  VectorSpectrum raw(lat);
  for (std::size_t i = 0; i < lat->mode_count(); ++i) raw.coeffs[i] = u[i];
  CHECK(rel_diff(project_leray(raw), u) <= 1e-15);
}

TEST_CASE("diagonal operators act by their eigenvalues") {
  const auto lat = make_lattice(16);
  const auto u = single_mode(lat, {2, 1}, Phase::sine);
  const double lam = 5.0;
  const double alpha = 0.3;
  CHECK(rel_diff(apply_j_alpha(u, alpha), (1.0 / (1.0 + alpha * alpha * lam)) * u) <= 1e-15);
  CHECK(rel_diff(apply_j_alpha_inverse(apply_j_alpha(u, alpha), alpha), u) <= 1e-15);
  CHECK(rel_diff(apply_heat_resolvent(u, 0.01), (1.0 / (1.0 + 0.01 * lam)) * u) <= 1e-15);
  CHECK(rel_diff(apply_stokes(u, 1.5), std::pow(lam, 1.5) * u) <= 1e-14);
  CHECK(norm_alpha(u, alpha) == doctest::Approx(std::sqrt(1.0 + alpha * alpha * lam * lam)));
  CHECK(norm_stokes_power(u, 0.5) == doctest::Approx(norm_v(u)));
}

TEST_CASE("field arithmetic refuses mixed lattices") {
  const auto a = single_mode(make_lattice(8), {1, 0}, Phase::cosine);
  const auto b = single_mode(make_lattice(16), {1, 0}, Phase::cosine);
  CHECK_THROWS_AS(a + b, std::invalid_argument);
  CHECK_THROWS_AS(inner_h(a, b), std::invalid_argument);
  CHECK_THROWS_AS(bilinear_b(a, b), std::invalid_argument);
}

TEST_CASE("bilinear forms are bilinear") {
  const auto lat = make_lattice(16);
  Engine e = make_engine(9, 0);
  const auto u = random_field(lat, e);
  const auto v = random_field(lat, e);
  const auto w = random_field(lat, e);
  CHECK(rel_diff(bilinear_b(u + 2.0 * w, v), bilinear_b(u, v) + 2.0 * bilinear_b(w, v)) <= 1e-13);
  CHECK(rel_diff(bilinear_btilde(u, v - 3.0 * w), bilinear_btilde(u, v) - 3.0 * bilinear_btilde(u, w)) <= 1e-13);
  CHECK(rel_diff(bilinear_btilde(u, v), bilinear_b(u, v) + gradient_contraction(u, v)) <= 1e-13);
  CHECK(rel_diff(btilde_alpha(u, v, 0.2), apply_j_alpha(bilinear_btilde(u, v), 0.2)) <= 1e-15);
  CHECK(invariant_defect(bilinear_b(u, v)) <= 1e-13);
}

TEST_CASE("identity suite passes on random triples") {
  for (int n : {8, 16}) {
    Engine e = make_engine(11, static_cast<std::uint64_t>(n));
    for (const auto& c : check_bilinear_identities(make_lattice(n), 20, 0.2, e)) {
      INFO(c.name);
      CHECK(c.pass());
    }
  }
}

TEST_CASE("J_alpha bounds hold and are tight in the expected places") {
  Engine e = make_engine(2, 0);
  const auto r = verify_operator_bounds(make_lattice(16), 0.3, 20, e);
  CHECK(r.ok());
  CHECK(r.max_smoothing_ratio < 1.0);
  CHECK(r.max_half_power_ratio <= 0.5);
  CHECK(r.trials == 20);
}

TEST_CASE("trilinear estimates calibrate and then hold on a finer lattice") {
  Engine e = make_engine(4, 0);
  const auto checks = check_trilinear_estimates(make_lattice(8), 100, make_lattice(16), 100, e);
  CHECK_FALSE(checks.empty());
  for (const auto& c : checks) {
    INFO(c.name);
    CHECK(c.calibrated_constant > 0.0);
    CHECK(c.pass());
  }
}

TEST_CASE("physical samples reproduce the H norm") {
  Engine e = make_engine(6, 0);
  const auto u = random_field(make_lattice(10), e);
  CHECK(to_physical(u).size() == static_cast<std::size_t>(make_lattice(10)->grid_size() * make_lattice(10)->grid_size()));
  CHECK(physical_l2_norm(u) == doctest::Approx(norm_h(u)).epsilon(1e-13));
}
