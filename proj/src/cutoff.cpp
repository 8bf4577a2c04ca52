#include "sierp/cutoff.hpp"

#include <algorithm>
#include <stdexcept>

namespace sierp {

PHFunction cell_cutoff(const CellAddress& K) {
  const Region nk = neighborhood(K);
  std::map<LatticePoint, Rational> values;
  for (const LatticePoint& v : vertices(nk, K.level())) values.emplace(v, 0);
  for (const LatticePoint& c : cell_corners(K)) values[c] = 1;
  return PHFunction::make(nk, K.level(), values);
}

MaxPHFunction::MaxPHFunction(std::vector<PHFunction> parts)
    : parts_(std::move(parts)) {
  if (parts_.empty())
    throw std::invalid_argument("MaxPHFunction: needs at least one part");
  Region acc = parts_.front().support();
  for (std::size_t i = 1; i < parts_.size(); ++i)
    acc = region_union(acc, parts_[i].support());
  union_support_ = std::move(acc);
  for (const PHFunction& p : parts_) {
    if (p.local())
      throw std::invalid_argument(
          "MaxPHFunction: parts must be globally defined (non-local)");
  }
}

int MaxPHFunction::min_definition_level() const {
  int m = parts_.front().definition_level();
  for (const PHFunction& p : parts_) m = std::min(m, p.definition_level());
  return m;
}

Rational MaxPHFunction::operator()(const LatticePoint& p) const {
  Rational best = parts_.front()(p);
  for (std::size_t i = 1; i < parts_.size(); ++i)
    best = max(best, parts_[i](p));
  return best;
}

PHFunction::VertexValues MaxPHFunction::materialize(const Region& region,
                                                    int m) const {
  std::vector<PHFunction> ext;
  ext.reserve(parts_.size());
  for (const PHFunction& p : parts_) ext.push_back(p.extend_to_level(m));
  PHFunction::VertexValues out;
  for (const ScaledVertex& v : vertices_scaled(region, m)) {
    Rational best = ext.front().value_scaled(v, m);
    for (std::size_t i = 1; i < ext.size(); ++i)
      best = max(best, ext[i].value_scaled(v, m));
    out.emplace_hint(out.end(), v, std::move(best));
  }
  return out;
}

MaxPHFunction MaxPHFunction::extended_to(int m) const {
  std::vector<PHFunction> ext;
  ext.reserve(parts_.size());
  for (const PHFunction& p : parts_) ext.push_back(p.extend_to_level(m));
  return MaxPHFunction(std::move(ext));
}

MaxPHFunction ball_cutoff(const LatticePoint& x0, const Rational& r,
                          AmbientWindow w) {
  const int n = scale_from_radius(r);
  const BallRegion ball = ball_cells(x0, r, n, w);
  std::vector<PHFunction> parts;
  parts.reserve(ball.core.size());
  for (const CellAddress& cell : ball.core.cells())
    parts.push_back(cell_cutoff(cell));
  return MaxPHFunction(std::move(parts));
}

CellMeasureTable markov_bound_table(const MaxPHFunction& phi, int m) {
  CellMeasureTable table{m, {}};
  for (const CellAddress& cell : descendant_addresses(phi.union_support(), m))
    table.entries.emplace(cell, Rational(0));
  for (const PHFunction& part : phi.parts()) {
    const CellMeasureTable t = gamma_cells(part, part.support(), m);
    for (const auto& [cell, value] : t.entries) table.entries[cell] += value;
  }
  return table;
}

Rational graph_energy(const MaxPHFunction& phi, const Region& region, int m) {
  const PHFunction::VertexValues vals = phi.materialize(region, m);
  Rational acc(0);
  for_each_descendant(region, m, m, [&](ScaledCell c) {
    const Rational& v1 = vals.at({c.i, c.j});
    const Rational& v2 = vals.at({c.i + 1, c.j});
    const Rational& v3 = vals.at({c.i, c.j + 1});
    acc += square(v1 - v2) + square(v1 - v3) + square(v2 - v3);
  });
  return acc * Rational::pow(Rational(5, 3), -static_cast<long>(m));
}

Rational polarized_edge_sum(const PHFunction& f, const MaxPHFunction& phi,
                            const Region& region, int m) {
  const PHFunction fe = f.extend_to_level(m);
  const PHFunction::VertexValues vals = phi.materialize(region, m);
  Rational acc(0);
  for_each_descendant(region, m, m, [&](ScaledCell c) {
    const Rational& f1 = fe.value_scaled({c.i, c.j}, m);
    const Rational& f2 = fe.value_scaled({c.i + 1, c.j}, m);
    const Rational& f3 = fe.value_scaled({c.i, c.j + 1}, m);
    const Rational& p1 = vals.at({c.i, c.j});
    const Rational& p2 = vals.at({c.i + 1, c.j});
    const Rational& p3 = vals.at({c.i, c.j + 1});
    const Rational s1 = f1 * f1, s2 = f2 * f2, s3 = f3 * f3;
    acc += (s1 + s2) * square(p1 - p2) + (s1 + s3) * square(p1 - p3) +
           (s2 + s3) * square(p2 - p3);
  });
  return acc * Rational::pow(Rational(5, 3), -static_cast<long>(m));
}

}  // namespace sierp
