#include "sierp/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace sierp {

namespace {

constexpr int kMaxSpanBits = 62;

long long checked_shift(int bits, const char* what) {
  if (bits < 0 || bits > kMaxSpanBits)
    throw std::invalid_argument(std::string(what) +
                                ": scale span out of range");
  return 1LL << bits;
}

bool is_pow2(const Integer& z) {
  if (sgn(z) <= 0) return false;
  return mpz_scan1(z.get_mpz_t(), 0) ==
         mpz_sizeinbase(z.get_mpz_t(), 2) - 1;
}

// Exponent e >= 0 with z == 2^e; requires is_pow2(z).
long pow2_exponent(const Integer& z) {
  return static_cast<long>(mpz_sizeinbase(z.get_mpz_t(), 2) - 1);
}

}  // namespace

// --------------------------------------------------------------------------
// LatticePoint
// --------------------------------------------------------------------------

LatticePoint LatticePoint::parse(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw std::invalid_argument("LatticePoint::parse: expected 'a,b'");
  return LatticePoint{Rational::parse(text.substr(0, comma)),
                      Rational::parse(text.substr(comma + 1))};
}

Rational dist2(const LatticePoint& p, const LatticePoint& q) {
  const Rational da = p.a - q.a;
  const Rational db = p.b - q.b;
  return da * da + da * db + db * db;
}

// --------------------------------------------------------------------------
// CellAddress
// --------------------------------------------------------------------------

CellAddress::CellAddress(AmbientWindow window, std::string word)
    : window_(window), word_(std::move(word)) {
  for (char c : word_) {
    if (c < '1' || c > '3')
      throw std::invalid_argument("CellAddress: word digits must be 1..3");
  }
}

CellAddress CellAddress::child(char digit) const {
  return CellAddress(window_, word_ + digit);
}

CellAddress CellAddress::parent() const {
  if (word_.empty()) throw std::logic_error("CellAddress::parent: at root");
  return CellAddress(window_, word_.substr(0, word_.size() - 1));
}

bool CellAddress::origin_anchored() const {
  return word_.find_first_not_of('1') == std::string::npos;
}

std::string CellAddress::to_string() const {
  return std::to_string(window_.level) + ":" + word_;
}

CellAddress CellAddress::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("CellAddress::parse: expected 'N:word'");
  const int n = std::stoi(text.substr(0, colon));
  return CellAddress(AmbientWindow{n}, text.substr(colon + 1));
}

std::array<LatticePoint, 3> window_corners(AmbientWindow w) {
  const Rational s = Rational::pow2(w.level);
  return {LatticePoint{0, 0}, LatticePoint{s, 0}, LatticePoint{0, s}};
}

ScaledCell scale_cell(const CellAddress& cell, int scale) {
  const int n = cell.window().level;
  if (scale > cell.level())
    throw std::invalid_argument("scale_cell: scale finer than cell level required");
  checked_shift(n - scale, "scale_cell");
  long long ai = 0;
  long long bi = 0;
  int t = 1;
  for (char c : cell.word()) {
    const long long u = checked_shift(n - t - scale, "scale_cell");
    if (c == '2') ai += u;
    if (c == '3') bi += u;
    ++t;
  }
  return ScaledCell{ai, bi, checked_shift(cell.level() - scale, "scale_cell")};
}

LatticePoint vertex_point(ScaledVertex v, int scale) {
  const Rational unit = Rational::pow2(scale);
  return LatticePoint{Rational(static_cast<long>(v.i)) * unit,
                      Rational(static_cast<long>(v.j)) * unit};
}

std::optional<ScaledVertex> scale_point(const LatticePoint& p, int scale) {
  const Rational unit = Rational::pow2(scale);
  const Rational qa = p.a / unit;
  const Rational qb = p.b / unit;
  if (qa.den() != 1 || qb.den() != 1) return std::nullopt;
  const Integer na = qa.num();
  const Integer nb = qb.num();
  if (!na.fits_slong_p() || !nb.fits_slong_p()) return std::nullopt;
  return ScaledVertex{na.get_si(), nb.get_si()};
}

std::array<LatticePoint, 3> cell_corners(const CellAddress& cell) {
  const int lev = cell.level();
  const ScaledCell s = scale_cell(cell, lev);  // side == 1
  return {vertex_point({s.i, s.j}, lev), vertex_point({s.i + 1, s.j}, lev),
          vertex_point({s.i, s.j + 1}, lev)};
}

std::array<CellAddress, 3> children(const CellAddress& cell) {
  return {cell.child('1'), cell.child('2'), cell.child('3')};
}

// --------------------------------------------------------------------------
// Region
// --------------------------------------------------------------------------

Region::Region(std::vector<CellAddress> cells) : cells_(std::move(cells)) {
  if (cells_.empty()) return;
  std::sort(cells_.begin(), cells_.end());
  cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
  level_ = cells_.front().level();
  for (const CellAddress& c : cells_) {
    if (c.level() != level_)
      throw std::invalid_argument("Region: cells must share one level");
    if (c.window() != cells_.front().window())
      throw std::invalid_argument("Region: cells must share one window");
  }
}

Region Region::single(const CellAddress& cell) {
  return Region(std::vector<CellAddress>{cell});
}

AmbientWindow Region::window() const {
  if (cells_.empty()) throw std::logic_error("Region::window: empty region");
  return cells_.front().window();
}

bool Region::contains(const CellAddress& cell) const {
  return std::binary_search(cells_.begin(), cells_.end(), cell);
}

Region region_union(const Region& a, const Region& b) {
  std::vector<CellAddress> cells = a.cells();
  cells.insert(cells.end(), b.cells().begin(), b.cells().end());
  return Region(std::move(cells));
}

bool region_subset(const Region& inner, const Region& outer) {
  for (const CellAddress& c : inner.cells())
    if (!outer.contains(c)) return false;
  return true;
}

std::vector<CellAddress> descendant_addresses(const CellAddress& cell, int m) {
  if (m > cell.level())
    throw std::invalid_argument("descendant_addresses: level finer than cell");
  std::vector<CellAddress> out;
  std::string word = cell.word();
  const std::size_t target = word.size() + static_cast<std::size_t>(cell.level() - m);
  auto walk = [&](auto&& self) -> void {
    if (word.size() == target) {
      out.emplace_back(cell.window(), word);
      return;
    }
    for (char d : {'1', '2', '3'}) {
      word.push_back(d);
      self(self);
      word.pop_back();
    }
  };
  walk(walk);
  return out;
}

std::vector<CellAddress> descendant_addresses(const Region& region, int m) {
  std::vector<CellAddress> out;
  for (const CellAddress& cell : region.cells()) {
    auto sub = descendant_addresses(cell, m);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

Rational measure(const Region& region) {
  if (region.empty()) return 0;
  return Rational(static_cast<long>(region.size())) *
         Rational::pow3(region.level());
}

std::set<ScaledVertex> vertices_scaled(const Region& region, int m) {
  if (!region.empty() && m > region.level())
    throw std::invalid_argument("vertices: level finer than region required");
  std::set<ScaledVertex> out;
  for_each_descendant(region, m, m, [&](ScaledCell c) {
    out.insert({c.i, c.j});
    out.insert({c.i + 1, c.j});
    out.insert({c.i, c.j + 1});
  });
  return out;
}

std::set<LatticePoint> vertices(const Region& region, int m) {
  std::set<LatticePoint> out;
  for (const ScaledVertex& v : vertices_scaled(region, m))
    out.insert(vertex_point(v, m));
  return out;
}

std::vector<std::pair<LatticePoint, LatticePoint>> edges(const Region& region,
                                                         int m) {
  std::vector<std::pair<LatticePoint, LatticePoint>> out;
  for_each_descendant(region, m, m, [&](ScaledCell c) {
    const LatticePoint p1 = vertex_point({c.i, c.j}, m);
    const LatticePoint p2 = vertex_point({c.i + 1, c.j}, m);
    const LatticePoint p3 = vertex_point({c.i, c.j + 1}, m);
    out.emplace_back(p1, p2);
    out.emplace_back(p1, p3);
    out.emplace_back(p2, p3);
  });
  return out;
}

// --------------------------------------------------------------------------
// Point location and neighborhoods
// --------------------------------------------------------------------------

namespace {

struct ScaledPoint {
  long long i = 0;
  long long j = 0;
};

bool hull_contains(const ScaledCell& c, const ScaledPoint& p) {
  const long long da = p.i - c.i;
  const long long db = p.j - c.j;
  return da >= 0 && db >= 0 && da + db <= c.side;
}

// Picks a scale at which both p and the whole window are integer-valued.
// Returns nullopt when p is not a dyadic lattice point.
std::optional<int> integer_scale_for(const LatticePoint& p, int max_scale) {
  const Integer da = p.a.den();
  const Integer db = p.b.den();
  if ((da != 1 && !is_pow2(da)) || (db != 1 && !is_pow2(db)))
    return std::nullopt;
  const long ea = da == 1 ? 0 : pow2_exponent(da);
  const long eb = db == 1 ? 0 : pow2_exponent(db);
  int scale = static_cast<int>(-std::max(ea, eb));
  if (scale > max_scale) scale = max_scale;
  return scale;
}

ScaledPoint scale_point_at(const LatticePoint& p, int scale) {
  const auto v = scale_point(p, scale);
  if (!v) throw std::invalid_argument("point is not on the dyadic lattice");
  return ScaledPoint{v->i, v->j};
}

}  // namespace

std::vector<CellAddress> cells_with_corner(const LatticePoint& p, int lev,
                                           AmbientWindow w) {
  const auto scale_opt = integer_scale_for(p, lev);
  if (!scale_opt) return {};
  const int scale = *scale_opt;
  const ScaledPoint sp = scale_point_at(p, scale);
  const ScaledCell root = scale_cell(CellAddress(w, ""), scale);
  if (!hull_contains(root, sp)) return {};

  std::vector<CellAddress> out;
  std::string word;
  const long long target = 1LL << (lev - scale);

  auto walk = [&](auto&& self, const ScaledCell& c) -> void {
    if (c.side == target) {
      const bool corner = (sp.i == c.i && sp.j == c.j) ||
                          (sp.i == c.i + c.side && sp.j == c.j) ||
                          (sp.i == c.i && sp.j == c.j + c.side);
      if (corner) out.emplace_back(w, word);
      return;
    }
    const long long h = c.side / 2;
    const ScaledCell kids[3] = {{c.i, c.j, h}, {c.i + h, c.j, h}, {c.i, c.j + h, h}};
    for (int k = 0; k < 3; ++k) {
      if (hull_contains(kids[k], sp)) {
        word.push_back(static_cast<char>('1' + k));
        self(self, kids[k]);
        word.pop_back();
      }
    }
  };
  walk(walk, root);
  return out;
}

Region neighborhood(const CellAddress& cell) {
  const auto corners = cell_corners(cell);
  const auto wc = window_corners(cell.window());
  for (const LatticePoint& c : corners) {
    if (c == wc[1] || c == wc[2])
      throw WindowTooSmallError("neighborhood of " + cell.to_string() +
                                " crosses the window boundary");
  }
  std::vector<CellAddress> cells{cell};
  for (const LatticePoint& c : corners) {
    for (CellAddress& other : cells_with_corner(c, cell.level(), cell.window()))
      cells.push_back(std::move(other));
  }
  return Region(std::move(cells));
}

CellAddress locate_cell(const LatticePoint& p, int n, AmbientWindow w) {
  if (n > w.level)
    throw std::invalid_argument("locate_cell: level coarser than window");
  const auto scale_opt = integer_scale_for(p, n);
  if (!scale_opt)
    throw std::invalid_argument("locate_cell: point is not a dyadic lattice point");
  const int scale = *scale_opt;
  const ScaledPoint sp = scale_point_at(p, scale);

  ScaledCell cur = scale_cell(CellAddress(w, ""), scale);
  if (!hull_contains(cur, sp))
    throw PointOutsideWindowError("locate_cell: point outside the window");

  std::string word;
  const long long target = 1LL << (n - scale);
  while (cur.side > target) {
    const long long h = cur.side / 2;
    const ScaledCell kids[3] = {{cur.i, cur.j, h}, {cur.i + h, cur.j, h},
                                {cur.i, cur.j + h, h}};
    bool found = false;
    for (int k = 0; k < 3; ++k) {
      if (hull_contains(kids[k], sp)) {  // first hit = lexicographic tie-break
        word.push_back(static_cast<char>('1' + k));
        cur = kids[k];
        found = true;
        break;
      }
    }
    if (!found)
      throw std::invalid_argument("locate_cell: point is not on the gasket");
  }
  return CellAddress(w, word);
}

int scale_from_radius(const Rational& r) {
  if (r.sign() <= 0)
    throw std::invalid_argument("scale_from_radius: radius must be positive");
  const long bits_num =
      static_cast<long>(mpz_sizeinbase(r.num().get_mpz_t(), 2));
  const long bits_den =
      static_cast<long>(mpz_sizeinbase(r.den().get_mpz_t(), 2));
  int n = static_cast<int>(bits_num - bits_den + 1);
  while (Rational::pow2(n - 1) > r) --n;
  while (Rational::pow2(n) <= r) ++n;
  return n;
}

BallRegion ball_cells(const LatticePoint& x0, const Rational& r, int n,
                      AmbientWindow w) {
  if (!(Rational::pow2(n - 1) <= r && r < Rational::pow2(n)))
    throw std::invalid_argument("ball_cells: need 2^(n-1) <= r < 2^n");
  const CellAddress base = locate_cell(x0, n, w);
  Region core = neighborhood(base);
  std::vector<CellAddress> acc;
  for (const CellAddress& c : core.cells()) {
    const Region nb = neighborhood(c);  // WindowTooSmall propagates
    acc.insert(acc.end(), nb.cells().begin(), nb.cells().end());
  }
  return BallRegion{x0, r, n, base, std::move(core), Region(std::move(acc))};
}

std::set<LatticePoint> region_boundary_vertices(const Region& region) {
  std::set<LatticePoint> out;
  if (region.empty()) return out;
  const auto wc = window_corners(region.window());
  std::set<LatticePoint> corners;
  for (const CellAddress& cell : region.cells())
    for (const LatticePoint& c : cell_corners(cell)) corners.insert(c);
  for (const LatticePoint& c : corners) {
    if (c == wc[1] || c == wc[2]) {
      out.insert(c);  // shared with cells beyond the window
      continue;
    }
    for (const CellAddress& other :
         cells_with_corner(c, region.level(), region.window())) {
      if (!region.contains(other)) {
        out.insert(c);
        break;
      }
    }
  }
  return out;
}

}  // namespace sierp
