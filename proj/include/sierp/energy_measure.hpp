#pragma once

#include <map>

#include "sierp/energy.hpp"

namespace sierp {

/// Exact rational interval certified to contain a true value. Arithmetic is
/// outward: every combination of points from the operands is covered.
class Enclosure {
 public:
  Enclosure() : lo_(0), hi_(0) {}
  Enclosure(Rational lo, Rational hi);
  static Enclosure point(const Rational& x) { return Enclosure(x, x); }

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational width() const { return hi_ - lo_; }
  Rational midpoint() const { return (lo_ + hi_) / 2; }

  bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
  bool contains(const Enclosure& inner) const {
    return lo_ <= inner.lo_ && inner.hi_ <= hi_;
  }

  Enclosure scaled(const Rational& c) const;

  friend Enclosure operator+(const Enclosure& a, const Enclosure& b) {
    return Enclosure(a.lo_ + b.lo_, a.hi_ + b.hi_);
  }
  friend Enclosure operator*(const Enclosure& a, const Enclosure& b);
  friend bool operator==(const Enclosure&, const Enclosure&) = default;

 private:
  Rational lo_, hi_;
};

/// [min x^2, max x^2] for x ranging over [lo, hi]; zero lower bound when the
/// range straddles zero (forced by continuity on a connected cell).
Enclosure square_range(const Rational& lo, const Rational& hi);

/// Per-cell localization of an energy measure at one level.
struct CellMeasureTable {
  int level = 0;
  std::map<CellAddress, Rational> entries;

  Rational total() const;
};

/// Gamma(phi,phi) localized to the level-m cells of the region. Exact for
/// piecewise-harmonic phi with m <= definition level: the per-cell edge
/// energy is stabilized, and this is re-verified one level deeper.
CellMeasureTable gamma_cells(const PHFunction& phi, const Region& region,
                             int m);

/// (5/3)^(-m) * sum over level-m edges of
/// (f(p)^2 + f(q)^2) * (phi(p) - phi(q))^2. As m decreases this converges
/// to 2 * integral of f^2 dGamma(phi,phi); the factor 2 is pinned by the
/// f == 1 identity against the graph energy.
Rational polarized_edge_sum(const PHFunction& f, const PHFunction& phi,
                            const Region& region, int m);

/// Enclosure of the integral of f^2 dGamma(phi,phi) over the region:
/// sum over level-`depth` cells of [min f^2, max f^2] * Gamma(cell), the
/// extremes taken over cell corners (maximum principle; both functions are
/// harmonic on cells at or below their definition levels).
/// Throws DepthTooShallowError when depth is above either definition level.
Enclosure integral_f2_dgamma(const PHFunction& f, const PHFunction& phi,
                             const Region& region, int depth);

/// Enclosure of the integral of f^2 dm over the region, via
/// [min f^2, max f^2] * 3^depth per level-`depth` cell.
Enclosure integral_f2_dm(const PHFunction& f, const Region& region, int depth);

/// Exact integral of f dm over the region: harmonic refinement preserves the
/// corner-sum average, so each definition-level cell contributes its corner
/// mean times its measure.
Rational integral_f_dm(const PHFunction& f, const Region& region);

}  // namespace sierp
