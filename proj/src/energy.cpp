#include "sierp/energy.hpp"

#include <stdexcept>
#include <utility>

namespace sierp {

namespace {

const Rational kZero(0);

bool hull_contains_point(const CellAddress& cell, const LatticePoint& p) {
  const auto c = cell_corners(cell);
  const Rational da = p.a - c[0].a;
  const Rational db = p.b - c[0].b;
  const Rational side = Rational::pow2(cell.level());
  return da.sign() >= 0 && db.sign() >= 0 && da + db <= side;
}

}  // namespace

std::array<Rational, 3> harmonic_extend_cell(const Rational& u1,
                                             const Rational& u2,
                                             const Rational& u3) {
  const Rational five(5);
  return {(2 * (u1 + u2) + u3) / five, (2 * (u1 + u3) + u2) / five,
          (2 * (u2 + u3) + u1) / five};
}

PHFunction PHFunction::build(Region support, int def_level,
                             const std::map<LatticePoint, Rational>& values,
                             bool local) {
  if (support.empty())
    throw std::invalid_argument("PHFunction: empty support");
  if (def_level > support.level())
    throw std::invalid_argument("PHFunction: definition level above support level");

  const auto expected = vertices_scaled(support, def_level);
  auto stored = std::make_shared<VertexValues>();
  for (const auto& [point, value] : values) {
    const auto v = scale_point(point, def_level);
    if (!v || expected.find(*v) == expected.end())
      throw std::invalid_argument("PHFunction: value at " + point.to_string() +
                                  " is not a definition-level vertex of the support");
    stored->emplace(*v, value);
  }
  if (stored->size() != expected.size())
    throw std::invalid_argument("PHFunction: values must cover every "
                                "definition-level vertex of the support");

  if (!local) {
    for (const LatticePoint& b : region_boundary_vertices(support)) {
      const auto v = scale_point(b, def_level);
      if (v && stored->at(*v) != kZero)
        throw std::invalid_argument(
            "PHFunction: nonzero value at boundary vertex " + b.to_string());
    }
  }
  return PHFunction(std::move(support), def_level, def_level, local,
                    std::move(stored));
}

PHFunction PHFunction::make(Region support, int def_level,
                            const std::map<LatticePoint, Rational>& values) {
  return build(std::move(support), def_level, values, /*local=*/false);
}

PHFunction PHFunction::make_local(
    Region support, int def_level,
    const std::map<LatticePoint, Rational>& values) {
  return build(std::move(support), def_level, values, /*local=*/true);
}

PHFunction PHFunction::constant(Region support, const Rational& c) {
  std::map<LatticePoint, Rational> values;
  for (const LatticePoint& v : vertices(support, support.level()))
    values.emplace(v, c);
  const int level = support.level();
  return build(std::move(support), level, values, /*local=*/!c.is_zero());
}

const Rational& PHFunction::value_scaled(ScaledVertex v, int scale) const {
  ScaledVertex key = v;
  if (scale != mat_level_) {
    if (scale < mat_level_) {
      const long long f = 1LL << (mat_level_ - scale);
      if (v.i % f != 0 || v.j % f != 0)
        throw std::invalid_argument(
            "PHFunction: vertex finer than the materialized level");
      key = {v.i / f, v.j / f};
    } else {
      const long long f = 1LL << (scale - mat_level_);
      key = {v.i * f, v.j * f};
    }
  }
  const auto it = values_->find(key);
  return it == values_->end() ? kZero : it->second;
}

Rational PHFunction::operator()(const LatticePoint& p) const {
  const auto v = scale_point(p, mat_level_);
  if (v) {
    const auto it = values_->find(*v);
    if (it != values_->end()) return it->second;
  }
  // Not materialized: fine only when the point is outside the support.
  for (const CellAddress& cell : support_.cells()) {
    if (hull_contains_point(cell, p)) {
      if (!v)
        throw std::invalid_argument(
            "PHFunction: evaluation below the materialized level; extend first");
      return kZero;  // materialized vertex of the support's window, off-support cells
    }
  }
  return kZero;
}

PHFunction PHFunction::extend_to_level(int m) const {
  if (m >= mat_level_) return *this;
  auto out = std::make_shared<VertexValues>();
  {
    const long long f = 1LL << (mat_level_ - m);
    for (const auto& [v, q] : *values_)
      out->emplace_hint(out->end(), ScaledVertex{v.i * f, v.j * f}, q);
  }
  for (int lev = mat_level_; lev > m; --lev) {
    for_each_descendant(support_, lev, m, [&](ScaledCell c) {
      const long long h = c.side / 2;
      const Rational& u1 = out->at({c.i, c.j});
      const Rational& u2 = out->at({c.i + c.side, c.j});
      const Rational& u3 = out->at({c.i, c.j + c.side});
      auto mids = harmonic_extend_cell(u1, u2, u3);
      out->emplace(ScaledVertex{c.i + h, c.j}, std::move(mids[0]));
      out->emplace(ScaledVertex{c.i, c.j + h}, std::move(mids[1]));
      out->emplace(ScaledVertex{c.i + h, c.j + h}, std::move(mids[2]));
    });
  }
  return PHFunction(support_, def_level_, m, local_, std::move(out));
}

std::map<LatticePoint, Rational> PHFunction::values_at(int m) const {
  if (m > support_.level())
    throw std::invalid_argument("PHFunction::values_at: above support level");
  const PHFunction ext = extend_to_level(m);
  std::map<LatticePoint, Rational> out;
  const long long f = 1LL << (m - ext.mat_level_ < 0 ? 0 : m - ext.mat_level_);
  for (const auto& [v, q] : *ext.values_) {
    if (ext.mat_level_ < m) {
      if (v.i % f != 0 || v.j % f != 0) continue;  // deeper vertex
      out.emplace(vertex_point({v.i / f, v.j / f}, m), q);
    } else {
      out.emplace(vertex_point(v, m), q);
    }
  }
  return out;
}

PHFunction PHFunction::scaled_by(const Rational& c) const {
  auto out = std::make_shared<VertexValues>();
  for (const auto& [v, q] : *values_) out->emplace_hint(out->end(), v, c * q);
  const bool local = local_ && !c.is_zero();
  return PHFunction(support_, def_level_, mat_level_, local, std::move(out));
}

Rational graph_energy(const PHFunction& f, const Region& region, int m) {
  if (region.empty()) return 0;
  if (m > region.level())
    throw std::invalid_argument("graph_energy: level finer than region required");
  if (f.local() && !region_subset(region, f.support()))
    throw std::invalid_argument(
        "graph_energy: local function evaluated outside its support");
  const PHFunction fe = f.extend_to_level(m);
  Rational acc(0);
  for_each_descendant(region, m, m, [&](ScaledCell c) {
    const Rational& v1 = fe.value_scaled({c.i, c.j}, m);
    const Rational& v2 = fe.value_scaled({c.i + 1, c.j}, m);
    const Rational& v3 = fe.value_scaled({c.i, c.j + 1}, m);
    acc += square(v1 - v2) + square(v1 - v3) + square(v2 - v3);
  });
  return acc * Rational::pow(Rational(5, 3), -static_cast<long>(m));
}

EnergyValue dirichlet_energy(const PHFunction& f, const Region& region) {
  const int m = f.definition_level();
  const Rational e0 = graph_energy(f, region, m);
  const Rational e1 = graph_energy(f, region, m - 1);
  if (e0 != e1)
    throw StabilizationFailureError(
        "dirichlet_energy: graph energy did not stabilize at the definition level");
  return EnergyValue{e0, m};
}

}  // namespace sierp
