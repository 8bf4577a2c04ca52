#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sierp/errors.hpp"
#include "sierp/rational.hpp"

namespace sierp {

// ---------------------------------------------------------------------------
// Points.
//
// All geometry lives in the oblique basis e1 = (1,0), e2 = (1/2, sqrt(3)/2):
// the Euclidean point is a*e1 + b*e2. In this basis every vertex of the
// gasket has rational coordinates and squared Euclidean distance is the
// exact rational da^2 + da*db + db^2, so no irrational arithmetic is needed.
// ---------------------------------------------------------------------------

struct LatticePoint {
  Rational a;
  Rational b;

  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
  friend std::strong_ordering operator<=>(const LatticePoint& x,
                                          const LatticePoint& y) {
    if (auto c = x.a <=> y.a; c != 0) return c;
    return x.b <=> y.b;
  }

  std::string to_string() const { return a.to_string() + "," + b.to_string(); }
  static LatticePoint parse(const std::string& text);
};

/// Exact squared Euclidean distance.
Rational dist2(const LatticePoint& p, const LatticePoint& q);

// ---------------------------------------------------------------------------
// Windows and cell addresses.
//
// The unbounded gasket is represented through a finite ambient window: the
// cell 2^N * K anchored at the origin. Every represented cell is a
// descendant of the window; a cell at address word w_1..w_k has level
// N - k, and its corners are the window corners pushed through the
// contractions toward corner w_1, then w_2, and so on.
// ---------------------------------------------------------------------------

struct AmbientWindow {
  int level = 0;  // the window is the cell 2^level * K

  friend bool operator==(const AmbientWindow&, const AmbientWindow&) = default;
  friend std::strong_ordering operator<=>(const AmbientWindow&,
                                          const AmbientWindow&) = default;
};

/// The three corners of the window (origin plus the two outer corners, in
/// basis coordinates).
std::array<LatticePoint, 3> window_corners(AmbientWindow w);

class CellAddress {
 public:
  CellAddress(AmbientWindow window, std::string word);

  AmbientWindow window() const { return window_; }
  const std::string& word() const { return word_; }
  int level() const { return window_.level - static_cast<int>(word_.size()); }

  CellAddress child(char digit) const;  // digit in {'1','2','3'}
  CellAddress parent() const;           // throws std::logic_error at the root

  /// True iff this cell is the origin-anchored cell 2^level * K
  /// (all-'1' word), the only shape whose neighborhood has 3 cells.
  bool origin_anchored() const;

  std::string to_string() const;  // "N:word", e.g. "2:21"
  static CellAddress parse(const std::string& text);

  friend bool operator==(const CellAddress&, const CellAddress&) = default;
  friend std::strong_ordering operator<=>(const CellAddress&,
                                          const CellAddress&) = default;

 private:
  AmbientWindow window_;
  std::string word_;
};

std::array<LatticePoint, 3> cell_corners(const CellAddress& cell);
std::array<CellAddress, 3> children(const CellAddress& cell);

// ---------------------------------------------------------------------------
// Integer-scaled views.
//
// At a fixed scale m every relevant vertex is an integer multiple of 2^m in
// both basis coordinates. Hot loops (extension, edge sums, enclosures) run
// on these integer pairs; exact rationals appear only in the stored values.
// ---------------------------------------------------------------------------

struct ScaledVertex {
  long long i = 0;
  long long j = 0;
  friend auto operator<=>(const ScaledVertex&, const ScaledVertex&) = default;
};

struct ScaledCell {
  long long i = 0;     // anchor (p1-corner), in units of 2^scale
  long long j = 0;
  long long side = 1;  // side length in units of 2^scale
};

LatticePoint vertex_point(ScaledVertex v, int scale);

/// Exact conversion of p to the scale-m integer lattice; nullopt when p is
/// not a multiple of 2^m (i.e. lives strictly deeper than level m).
std::optional<ScaledVertex> scale_point(const LatticePoint& p, int scale);

/// The cell's anchor and side in units of 2^scale. Requires
/// scale <= cell.level() and a representable span (throws otherwise).
ScaledCell scale_cell(const CellAddress& cell, int scale);

namespace detail {
template <typename F>
void descend(ScaledCell c, long long target_side, F&& fn) {
  if (c.side == target_side) {
    fn(c);
    return;
  }
  const long long h = c.side / 2;
  descend(ScaledCell{c.i, c.j, h}, target_side, fn);
  descend(ScaledCell{c.i + h, c.j, h}, target_side, fn);
  descend(ScaledCell{c.i, c.j + h, h}, target_side, fn);
}
}  // namespace detail

/// Visits every level-`lev` descendant of `cell`, reported at scale `scale`
/// (scale <= lev <= cell.level()), in address-lexicographic order.
template <typename F>
void for_each_descendant(const CellAddress& cell, int lev, int scale, F&& fn) {
  const ScaledCell root = scale_cell(cell, scale);
  const long long target = 1LL << (lev - scale);
  detail::descend(root, target, fn);
}

// ---------------------------------------------------------------------------
// Regions: finite unions of distinct same-level cells. Two same-level cells
// meet in at most one shared vertex, so a region's measure is just
// (#cells) * 3^level.
// ---------------------------------------------------------------------------

class Region {
 public:
  Region() = default;  // empty
  explicit Region(std::vector<CellAddress> cells);  // sorts, checks level

  static Region single(const CellAddress& cell);

  bool empty() const { return cells_.empty(); }
  int level() const { return level_; }
  AmbientWindow window() const;
  const std::vector<CellAddress>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }
  bool contains(const CellAddress& cell) const;

  friend bool operator==(const Region&, const Region&) = default;

 private:
  int level_ = 0;
  std::vector<CellAddress> cells_;  // sorted, unique
};

Region region_union(const Region& a, const Region& b);
bool region_subset(const Region& inner, const Region& outer);

template <typename F>
void for_each_descendant(const Region& region, int lev, int scale, F&& fn) {
  for (const CellAddress& cell : region.cells())
    for_each_descendant(cell, lev, scale, fn);
}

/// Addresses of all level-m descendants, in address order.
std::vector<CellAddress> descendant_addresses(const CellAddress& cell, int m);
std::vector<CellAddress> descendant_addresses(const Region& region, int m);

/// Exact measure: (#cells) * 3^level.
Rational measure(const Region& region);

/// All level-m vertices inside the region (deduplicated across cells).
std::set<LatticePoint> vertices(const Region& region, int m);
std::set<ScaledVertex> vertices_scaled(const Region& region, int m);

/// All level-m edges: pairs of level-m vertices at squared distance 4^m.
/// Each edge lies inside exactly one level-m cell, 3 per cell.
std::vector<std::pair<LatticePoint, LatticePoint>> edges(const Region& region,
                                                         int m);

// ---------------------------------------------------------------------------
// Neighborhoods, location, balls.
// ---------------------------------------------------------------------------

/// All same-level cells inside the window having p as a corner, in address
/// order. p must be a level-`lev` lattice point for corner matches to occur.
std::vector<CellAddress> cells_with_corner(const LatticePoint& p, int lev,
                                           AmbientWindow w);

/// The union of all same-level cells meeting `cell`: 3 cells when the cell
/// is origin-anchored, 4 otherwise. Throws WindowTooSmallError when a
/// meeting cell would lie beyond the window (i.e. the cell touches a
/// non-origin window corner).
Region neighborhood(const CellAddress& cell);

/// The level-n cell containing p; on a shared vertex the lexicographically
/// smallest address wins. Throws PointOutsideWindowError when p is outside
/// the window, std::invalid_argument when p is not a gasket lattice point.
CellAddress locate_cell(const LatticePoint& p, int n, AmbientWindow w);

/// The unique n with 2^(n-1) <= r < 2^n.
int scale_from_radius(const Rational& r);

struct BallRegion {
  LatticePoint center;
  Rational radius;
  int scale_level = 0;      // n with 2^(n-1) <= r < 2^n
  CellAddress base_cell;    // level-n cell containing the center
  Region core;              // N(base_cell);          covers B(center, r)
  Region enlarged;          // union of N(C) over core cells C; inside B(center, 8r)
};

/// Region machinery for a ball: requires the bracket 2^(n-1) <= r < 2^n.
BallRegion ball_cells(const LatticePoint& x0, const Rational& r, int n,
                      AmbientWindow w);

/// Vertices of the region (at the region's level) shared with cells outside
/// it, including non-origin window corners. Functions supported on the
/// region must vanish here to extend continuously by zero.
std::set<LatticePoint> region_boundary_vertices(const Region& region);

}  // namespace sierp
