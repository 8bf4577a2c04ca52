#include "sierp/energy_measure.hpp"

#include <stdexcept>
#include <string>

namespace sierp {

namespace {

Rational cell_edge_sum(const PHFunction& f, const ScaledCell& c, int scale) {
  const Rational& v1 = f.value_scaled({c.i, c.j}, scale);
  const Rational& v2 = f.value_scaled({c.i + c.side, c.j}, scale);
  const Rational& v3 = f.value_scaled({c.i, c.j + c.side}, scale);
  return square(v1 - v2) + square(v1 - v3) + square(v2 - v3);
}

void check_depth(const PHFunction& f, int depth, const char* op) {
  if (depth > f.definition_level())
    throw DepthTooShallowError(std::string(op) +
                               ": depth above a definition level");
}

void check_local(const PHFunction& f, const Region& region, const char* op) {
  if (f.local() && !region_subset(region, f.support()))
    throw std::invalid_argument(
        std::string(op) + ": local function evaluated outside its support");
}

}  // namespace

Enclosure::Enclosure(Rational lo, Rational hi)
    : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (hi_ < lo_) throw std::invalid_argument("Enclosure: lo > hi");
}

Enclosure Enclosure::scaled(const Rational& c) const {
  return c.sign() >= 0 ? Enclosure(c * lo_, c * hi_)
                       : Enclosure(c * hi_, c * lo_);
}

Enclosure operator*(const Enclosure& a, const Enclosure& b) {
  const Rational p1 = a.lo_ * b.lo_, p2 = a.lo_ * b.hi_;
  const Rational p3 = a.hi_ * b.lo_, p4 = a.hi_ * b.hi_;
  return Enclosure(min(min(p1, p2), min(p3, p4)),
                   max(max(p1, p2), max(p3, p4)));
}

Enclosure square_range(const Rational& lo, const Rational& hi) {
  if (lo.sign() >= 0) return Enclosure(lo * lo, hi * hi);
  if (hi.sign() <= 0) return Enclosure(hi * hi, lo * lo);
  return Enclosure(0, max(lo * lo, hi * hi));
}

Rational CellMeasureTable::total() const {
  Rational acc(0);
  for (const auto& [cell, value] : entries) acc += value;
  return acc;
}

CellMeasureTable gamma_cells(const PHFunction& phi, const Region& region,
                             int m) {
  check_depth(phi, m, "gamma_cells");
  check_local(phi, region, "gamma_cells");
  const PHFunction pe = phi.extend_to_level(m - 1);
  const Rational scale_m = Rational::pow(Rational(5, 3), -static_cast<long>(m));
  const Rational scale_m1 =
      Rational::pow(Rational(5, 3), -static_cast<long>(m - 1));

  CellMeasureTable table{m, {}};
  for (const CellAddress& top : region.cells()) {
    std::string word = top.word();
    auto walk = [&](auto&& self, const ScaledCell& c) -> void {
      if (c.side == 1) {
        const Rational entry = scale_m * cell_edge_sum(pe, c, m);
        // Stabilization check: the three children one level deeper must
        // reproduce the same localized energy exactly.
        const long long i2 = 2 * c.i, j2 = 2 * c.j;
        Rational deeper = cell_edge_sum(pe, {i2, j2, 1}, m - 1);
        deeper += cell_edge_sum(pe, {i2 + 1, j2, 1}, m - 1);
        deeper += cell_edge_sum(pe, {i2, j2 + 1, 1}, m - 1);
        if (entry != scale_m1 * deeper)
          throw StabilizationFailureError(
              "gamma_cells: localized energy did not stabilize");
        table.entries.emplace(CellAddress(region.window(), word), entry);
        return;
      }
      const long long h = c.side / 2;
      const ScaledCell kids[3] = {
          {c.i, c.j, h}, {c.i + h, c.j, h}, {c.i, c.j + h, h}};
      for (int k = 0; k < 3; ++k) {
        word.push_back(static_cast<char>('1' + k));
        self(self, kids[k]);
        word.pop_back();
      }
    };
    walk(walk, scale_cell(top, m));
  }
  return table;
}

Rational polarized_edge_sum(const PHFunction& f, const PHFunction& phi,
                            const Region& region, int m) {
  check_local(f, region, "polarized_edge_sum");
  check_local(phi, region, "polarized_edge_sum");
  const PHFunction fe = f.extend_to_level(m);
  const PHFunction pe = phi.extend_to_level(m);
  Rational acc(0);
  for_each_descendant(region, m, m, [&](ScaledCell c) {
    const Rational& f1 = fe.value_scaled({c.i, c.j}, m);
    const Rational& f2 = fe.value_scaled({c.i + 1, c.j}, m);
    const Rational& f3 = fe.value_scaled({c.i, c.j + 1}, m);
    const Rational& p1 = pe.value_scaled({c.i, c.j}, m);
    const Rational& p2 = pe.value_scaled({c.i + 1, c.j}, m);
    const Rational& p3 = pe.value_scaled({c.i, c.j + 1}, m);
    const Rational s1 = f1 * f1, s2 = f2 * f2, s3 = f3 * f3;
    acc += (s1 + s2) * square(p1 - p2) + (s1 + s3) * square(p1 - p3) +
           (s2 + s3) * square(p2 - p3);
  });
  return acc * Rational::pow(Rational(5, 3), -static_cast<long>(m));
}

Enclosure integral_f2_dgamma(const PHFunction& f, const PHFunction& phi,
                             const Region& region, int depth) {
  check_depth(f, depth, "integral_f2_dgamma");
  check_depth(phi, depth, "integral_f2_dgamma");
  check_local(f, region, "integral_f2_dgamma");
  check_local(phi, region, "integral_f2_dgamma");
  const PHFunction fe = f.extend_to_level(depth);
  const PHFunction pe = phi.extend_to_level(depth);
  Rational lo(0), hi(0);
  for_each_descendant(region, depth, depth, [&](ScaledCell c) {
    const Rational gamma = cell_edge_sum(pe, c, depth);
    if (gamma.is_zero()) return;
    const Rational& f1 = fe.value_scaled({c.i, c.j}, depth);
    const Rational& f2 = fe.value_scaled({c.i + 1, c.j}, depth);
    const Rational& f3 = fe.value_scaled({c.i, c.j + 1}, depth);
    const Rational* fmin = &f1;
    const Rational* fmax = &f1;
    if (f2 < *fmin) fmin = &f2;
    if (f3 < *fmin) fmin = &f3;
    if (*fmax < f2) fmax = &f2;
    if (*fmax < f3) fmax = &f3;
    const Enclosure sq = square_range(*fmin, *fmax);
    lo += sq.lo() * gamma;
    hi += sq.hi() * gamma;
  });
  const Rational scale = Rational::pow(Rational(5, 3), -static_cast<long>(depth));
  return Enclosure(lo * scale, hi * scale);
}

Enclosure integral_f2_dm(const PHFunction& f, const Region& region,
                         int depth) {
  check_depth(f, depth, "integral_f2_dm");
  check_local(f, region, "integral_f2_dm");
  const PHFunction fe = f.extend_to_level(depth);
  Rational lo(0), hi(0);
  for_each_descendant(region, depth, depth, [&](ScaledCell c) {
    const Rational& f1 = fe.value_scaled({c.i, c.j}, depth);
    const Rational& f2 = fe.value_scaled({c.i + 1, c.j}, depth);
    const Rational& f3 = fe.value_scaled({c.i, c.j + 1}, depth);
    const Rational* fmin = &f1;
    const Rational* fmax = &f1;
    if (f2 < *fmin) fmin = &f2;
    if (f3 < *fmin) fmin = &f3;
    if (*fmax < f2) fmax = &f2;
    if (*fmax < f3) fmax = &f3;
    const Enclosure sq = square_range(*fmin, *fmax);
    lo += sq.lo();
    hi += sq.hi();
  });
  const Rational cell_mass = Rational::pow3(depth);
  return Enclosure(lo * cell_mass, hi * cell_mass);
}

Rational integral_f_dm(const PHFunction& f, const Region& region) {
  check_local(f, region, "integral_f_dm");
  const int m = f.definition_level();
  const PHFunction fe = f.extend_to_level(m);
  Rational acc(0);
  for_each_descendant(region, m, m, [&](ScaledCell c) {
    acc += fe.value_scaled({c.i, c.j}, m) +
           fe.value_scaled({c.i + 1, c.j}, m) +
           fe.value_scaled({c.i, c.j + 1}, m);
  });
  return acc * Rational::pow3(m) / 3;
}

}  // namespace sierp
