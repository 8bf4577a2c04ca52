#include <doctest.h>

#include "sierp/cutoff.hpp"
#include "sierp/rng.hpp"
#include "sierp/verify.hpp"

using namespace sierp;

TEST_CASE("cell cutoff profile") {
  const CellAddress K = interior_cell(0);
  const PHFunction phi = cell_cutoff(K);
  const Region& nk = phi.support();
  CHECK(nk.size() == 4);
  CHECK(phi.definition_level() == 0);

  // 1 on the center cell's corners, 0 on the outer corners.
  const auto corners = cell_corners(K);
  for (const LatticePoint& c : corners) CHECK(phi(c) == 1);
  for (const LatticePoint& b : region_boundary_vertices(nk)) CHECK(phi(b) == 0);

  // One level down, the neighbor midpoints adjacent to a shared corner
  // carry the value 2/5.
  const PHFunction ext = phi.extend_to_level(-4);
  for (const CellAddress& cell : nk.cells()) {
    if (cell == K) continue;
    const auto cc = cell_corners(cell);
    int shared = -1;
    for (int j = 0; j < 3; ++j)
      for (const LatticePoint& kc : corners)
        if (cc[j] == kc) shared = j;
    REQUIRE(shared >= 0);
    for (int j = 0; j < 3; ++j) {
      if (j == shared) continue;
      const LatticePoint mid{(cc[shared].a + cc[j].a) / 2,
                             (cc[shared].b + cc[j].b) / 2};
      CHECK(ext(mid) == Rational(2, 5));
    }
  }

  // Vertex sweep four levels down: range [0,1], constant 1 inside K.
  const auto kverts = vertices(Region::single(K), -4);
  for (const auto& [p, v] : ext.values_at(-4)) {
    CHECK(v.sign() >= 0);
    CHECK(v <= Rational(1));
    if (kverts.count(p)) CHECK(v == 1);
  }
}

TEST_CASE("cell cutoff energies across scales") {
  for (int n = -6; n <= 6; ++n) {
    for (int idx = 0; idx < 3; ++idx) {
      const PHFunction phi = cell_cutoff(interior_cell(n, idx));
      CHECK(dirichlet_energy(phi, phi.support()).value ==
            Rational(6) * Rational::pow(Rational(3, 5), n));
    }
  }
}

TEST_CASE("cell cutoff is self-similar across scales") {
  const PHFunction base = cell_cutoff(interior_cell(0)).extend_to_level(-3);
  for (int n : {-4, -1, 2, 5}) {
    const PHFunction phi = cell_cutoff(interior_cell(n)).extend_to_level(n - 3);
    // In window-relative integer coordinates the two value maps coincide.
    CHECK(phi.raw_values() == base.raw_values());
  }
}

TEST_CASE("ball cutoff structure and profile") {
  // Interior center: four parts.
  const AmbientWindow w{4};
  const LatticePoint x0{Rational::pow2(3), 0};
  const Rational r(1, 2);
  const MaxPHFunction phi = ball_cutoff(x0, r, w);
  CHECK(phi.parts().size() == 4);

  // Origin: three parts.
  const MaxPHFunction phi0 = ball_cutoff(LatticePoint{0, 0}, r, AmbientWindow{3});
  CHECK(phi0.parts().size() == 3);

  // Profile sweep: in [0,1] everywhere, 1 on N(K), 0 beyond distance 8r.
  const int n = scale_from_radius(r);
  const BallRegion ball = ball_cells(x0, r, n, w);
  const auto values = phi.materialize(ball.enlarged, n - 4);
  const Rational reach = square(Rational(8) * r);
  for (const auto& [v, value] : values) {
    CHECK(value.sign() >= 0);
    CHECK(value <= Rational(1));
    if (dist2(vertex_point(v, n - 4), x0) >= reach) CHECK(value == 0);
  }
  const auto core_values = phi.materialize(ball.core, n - 4);
  for (const auto& [v, value] : core_values) CHECK(value == 1);
}

TEST_CASE("pointwise max is subadditive in energy") {
  // Pure algebra: |max a_i - max b_i| <= max |a_i - b_i| implies the
  // edge-wise bound (max_i a_i - max_i b_i)^2 <= sum_i (a_i - b_i)^2.
  SplitMix64 rng(73);
  for (int i = 0; i < 400; ++i) {
    const int parts = 2 + static_cast<int>(rng.below(3));
    Rational max_a, max_b, sum_sq;
    for (int k = 0; k < parts; ++k) {
      const Rational a = rng.rational(9, 4);
      const Rational b = rng.rational(9, 4);
      if (k == 0) {
        max_a = a;
        max_b = b;
      } else {
        max_a = max(max_a, a);
        max_b = max(max_b, b);
      }
      sum_sq += square(a - b);
    }
    CHECK(square(max_a - max_b) <= sum_sq);
  }

  // On actual ball cutoffs: finite-level energies of the max never exceed
  // the summed part energies.
  const MaxPHFunction phi =
      ball_cutoff(LatticePoint{Rational::pow2(3), 0}, Rational(1, 2),
                  AmbientWindow{4});
  Rational part_total(0);
  for (const PHFunction& part : phi.parts())
    part_total += dirichlet_energy(part, part.support()).value;
  const MaxPHFunction ext = phi.extended_to(-4);
  for (int m = 0; m >= -4; --m)
    CHECK(graph_energy(ext, ext.union_support(), m) <= part_total);
}

TEST_CASE("markov bound table") {
  const AmbientWindow w{4};
  const LatticePoint x0{Rational::pow2(3), 0};
  const MaxPHFunction phi = ball_cutoff(x0, Rational(1, 2), w);
  const int n = 0;

  // The table sums to the part energies; for four interior parts that is
  // bounded by 24 * (3/5)^n.
  const CellMeasureTable table = markov_bound_table(phi, n);
  Rational part_total(0);
  for (const PHFunction& part : phi.parts())
    part_total += dirichlet_energy(part, part.support()).value;
  CHECK(table.total() == part_total);
  CHECK(table.total() <= Rational(24) * Rational::pow(Rational(3, 5), n));

  // Entries dominate the max function's localized energies level by level.
  const MaxPHFunction ext = phi.extended_to(n - 3);
  for (int m = n; m >= n - 3; --m) {
    const CellMeasureTable t = markov_bound_table(ext, m);
    CHECK(t.total() == part_total);
    CHECK(graph_energy(ext, ext.union_support(), m) <= t.total());
  }

  // Degenerate max of one part: the table equals the part's own table.
  const PHFunction single = cell_cutoff(interior_cell(0));
  const MaxPHFunction one_part(std::vector<PHFunction>{single});
  const CellMeasureTable t1 = markov_bound_table(one_part, -1);
  const CellMeasureTable t2 = gamma_cells(single, single.support(), -1);
  CHECK(t1.entries == t2.entries);
}
