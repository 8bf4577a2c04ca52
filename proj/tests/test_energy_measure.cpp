#include <doctest.h>

#include "sierp/cutoff.hpp"
#include "sierp/energy_measure.hpp"
#include "sierp/rng.hpp"
#include "sierp/verify.hpp"

using namespace sierp;

namespace {

PHFunction unit_harmonic(const Rational& u1, const Rational& u2,
                         const Rational& u3) {
  const Region cell = Region::single(CellAddress(AmbientWindow{0}, ""));
  const auto corners = cell_corners(cell.cells().front());
  std::map<LatticePoint, Rational> values{
      {corners[0], u1}, {corners[1], u2}, {corners[2], u3}};
  return PHFunction::make_local(cell, 0, values);
}

PHFunction random_local(const Region& region, int m_def, SplitMix64& rng) {
  std::map<LatticePoint, Rational> values;
  for (const LatticePoint& v : vertices(region, m_def))
    values.emplace(v, rng.rational(9, 5));
  return PHFunction::make_local(region, m_def, values);
}

}  // namespace

TEST_CASE("per-edge polarization identity") {
  SplitMix64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    const Rational pp = rng.rational(20, 9);
    const Rational pq = rng.rational(20, 9);
    const Rational fp = rng.rational(20, 9);
    const Rational fq = rng.rational(20, 9);
    const Rational lhs = 2 * (pp * fp * fp - pq * fq * fq) * (pp - pq) -
                         (pp * pp - pq * pq) * (fp * fp - fq * fq);
    const Rational rhs = (fp * fp + fq * fq) * square(pp - pq);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("square_range handles signs") {
  CHECK(square_range(Rational(1, 2), Rational(3)) ==
        Enclosure(Rational(1, 4), Rational(9)));
  CHECK(square_range(Rational(-3), Rational(-1, 2)) ==
        Enclosure(Rational(1, 4), Rational(9)));
  CHECK(square_range(Rational(-1, 2), Rational(3)) ==
        Enclosure(Rational(0), Rational(9)));
  CHECK(square_range(Rational(0), Rational(0)) == Enclosure::point(0));
}

TEST_CASE("enclosure arithmetic is outward") {
  const Enclosure a(Rational(-1), Rational(2));
  const Enclosure b(Rational(3), Rational(5));
  CHECK((a + b) == Enclosure(Rational(2), Rational(7)));
  CHECK((a * b) == Enclosure(Rational(-5), Rational(10)));
  CHECK(a.scaled(Rational(-2)) == Enclosure(Rational(-4), Rational(2)));
  CHECK_THROWS_AS(Enclosure(Rational(1), Rational(0)), std::invalid_argument);
}

TEST_CASE("gamma localization of the cell cutoff") {
  for (int n : {-2, 0, 3}) {
    const CellAddress K = interior_cell(n);
    const PHFunction phi = cell_cutoff(K);
    const Region& nk = phi.support();
    const CellMeasureTable table = gamma_cells(phi, nk, n);
    CHECK(table.entries.size() == 4);
    const Rational unit = Rational(2) * Rational::pow(Rational(3, 5), n);
    for (const auto& [cell, value] : table.entries) {
      if (cell == K) {
        CHECK(value == 0);
      } else {
        CHECK(value == unit);
      }
    }
    CHECK(table.total() == Rational(6) * Rational::pow(Rational(3, 5), n));
    CHECK(table.total() == dirichlet_energy(phi, nk).value);
  }
}

TEST_CASE("gamma table entries are additive across levels and functions") {
  const CellAddress K = interior_cell(0);
  const PHFunction phi = cell_cutoff(K);
  const Region& nk = phi.support();
  SplitMix64 rng(13);
  for (int i = 0; i < 5; ++i) {
    const PHFunction f = random_local(nk, -1, rng);
    for (int m = -1; m >= -4; --m) {
      const CellMeasureTable table = gamma_cells(f, nk, m);
      for (const auto& [cell, value] : table.entries)
        CHECK(value.sign() >= 0);
      CHECK(table.total() == dirichlet_energy(f, nk).value);
    }
  }
  // Constant: all entries vanish.
  const CellMeasureTable zero_table =
      gamma_cells(PHFunction::constant(nk, Rational(4)), nk, -2);
  for (const auto& [cell, value] : zero_table.entries) CHECK(value == 0);
}

TEST_CASE("polarized edge sum basics") {
  const CellAddress K = interior_cell(0);
  const PHFunction phi = cell_cutoff(K);
  const Region& nk = phi.support();

  const PHFunction one = PHFunction::constant(nk, Rational(1));
  const PHFunction zero = PHFunction::constant(nk, Rational(0));
  for (int m = 0; m >= -4; --m) {
    CHECK(polarized_edge_sum(one, phi, nk, m) ==
          Rational(2) * graph_energy(phi, nk, m));
    CHECK(polarized_edge_sum(zero, phi, nk, m) == 0);
  }

  // Hand enumeration: f = phi = harmonic (1,0,0) on the unit cell at level 0.
  const PHFunction h = unit_harmonic(1, 0, 0);
  CHECK(polarized_edge_sum(h, h, h.support(), 0) == 2);
}

TEST_CASE("integral of f^2 dGamma: exact cases and rigor") {
  const CellAddress K = interior_cell(0);
  const PHFunction phi = cell_cutoff(K);
  const Region& nk = phi.support();

  // f == 1: the enclosure collapses to the exact energy.
  const PHFunction one = PHFunction::constant(nk, Rational(1));
  const Enclosure exact = integral_f2_dgamma(one, phi, nk, -4);
  CHECK(exact.lo() == exact.hi());
  CHECK(exact.lo() == dirichlet_energy(phi, nk).value);

  // Constant phi: zero measure.
  const PHFunction c = PHFunction::constant(nk, Rational(3));
  const PHFunction f = cell_cutoff(K);
  CHECK(integral_f2_dgamma(f, c, nk, -4) == Enclosure::point(0));

  CHECK_THROWS_AS(integral_f2_dgamma(one, phi, nk, 1), DepthTooShallowError);
}

TEST_CASE("enclosures nest and widths shrink with depth") {
  const CellAddress K = interior_cell(0);
  const PHFunction phi = cell_cutoff(K).extend_to_level(-8);
  const Region& nk = phi.support();

  Enclosure prev = integral_f2_dgamma(phi, phi, nk, -2);
  for (int depth = -3; depth >= -8; --depth) {
    const Enclosure next = integral_f2_dgamma(phi, phi, nk, depth);
    CHECK(prev.contains(next));
    CHECK(next.width() < prev.width());
    prev = next;
  }

  // Sandwich: half the polarized edge sum is compatible with the enclosure.
  const Rational estimate = polarized_edge_sum(phi, phi, nk, -8) / 2;
  CHECK(prev.lo() - prev.width() <= estimate);
  CHECK(estimate <= prev.hi() + prev.width());
}

TEST_CASE("enclosure nesting for random function pairs") {
  const CellAddress K = interior_cell(0);
  const PHFunction phi = cell_cutoff(K);
  const Region& nk = phi.support();
  SplitMix64 rng(59);
  for (int i = 0; i < 10; ++i) {
    const PHFunction f = random_local(nk, -1, rng);
    Enclosure g_prev = integral_f2_dgamma(f, phi, nk, -2);
    Enclosure m_prev = integral_f2_dm(f, nk, -2);
    for (int depth = -3; depth >= -6; --depth) {
      const Enclosure g_next = integral_f2_dgamma(f, phi, nk, depth);
      const Enclosure m_next = integral_f2_dm(f, nk, depth);
      CHECK(g_prev.contains(g_next));
      CHECK(m_prev.contains(m_next));
      CHECK(g_next.width() <= g_prev.width());
      CHECK(m_next.width() <= m_prev.width());
      g_prev = g_next;
      m_prev = m_next;
    }
  }
}

TEST_CASE("integral of f^2 dm: exact and enclosed values") {
  const CellAddress K = interior_cell(0);
  const Region nk = neighborhood(K);

  const PHFunction c = PHFunction::constant(nk, Rational(-7, 3));
  const Enclosure e = integral_f2_dm(c, nk, -3);
  CHECK(e.lo() == e.hi());
  CHECK(e.lo() == Rational(49, 9) * measure(nk));

  const PHFunction one = PHFunction::constant(nk, Rational(1));
  CHECK(integral_f2_dm(one, nk, -2) == Enclosure::point(measure(nk)));

  // Harmonic (1,0,0) on the unit cell: the mean-value rule gives 1/3.
  const PHFunction h = unit_harmonic(1, 0, 0);
  CHECK(integral_f_dm(h, h.support()) == Rational(1, 3));

  // The first-moment rule is stable under extension.
  for (int k = 1; k <= 6; ++k) {
    const PHFunction deep = h.extend_to_level(-k);
    // Recompute from the deeper materialization: same exact value.
    Rational acc(0);
    for_each_descendant(h.support(), -k, -k, [&](ScaledCell cell) {
      acc += deep.value_scaled({cell.i, cell.j}, -k) +
             deep.value_scaled({cell.i + 1, cell.j}, -k) +
             deep.value_scaled({cell.i, cell.j + 1}, -k);
    });
    CHECK(acc * Rational::pow3(-k) / 3 == Rational(1, 3));
  }

  // Enclosure at depth -6 is tight and agrees with a vertex-sampling oracle.
  const Enclosure sq = integral_f2_dm(h, h.support(), -6);
  CHECK(sq.width() < Rational(1, 100));
  Rational sample_sum(0);
  long count = 0;
  for (const auto& [p, v] : h.extend_to_level(-6).values_at(-6)) {
    sample_sum += v * v;
    ++count;
  }
  const Rational oracle = sample_sum / Rational(count);  // mean over vertices
  CHECK(sq.lo() - sq.width() <= oracle);
  CHECK(oracle <= sq.hi() + sq.width());
}
