#include "sierp/verify.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "sierp/rng.hpp"

namespace sierp {

namespace {

// Random rational vertex values on vertices(region, m_def); boundary
// vertices forced to zero unless `local`.
std::map<LatticePoint, Rational> random_values(const Region& region, int m_def,
                                               SplitMix64& rng, bool local) {
  std::set<LatticePoint> boundary;
  if (!local) boundary = region_boundary_vertices(region);
  std::map<LatticePoint, Rational> values;
  for (const LatticePoint& v : vertices(region, m_def)) {
    if (!local && boundary.count(v)) {
      values.emplace(v, 0);
    } else {
      values.emplace(v, rng.rational(8, 4));
    }
  }
  return values;
}

std::vector<CellAddress> cutoff_candidates(const Region& region) {
  std::vector<CellAddress> out;
  for (const CellAddress& cell : region.cells()) {
    try {
      if (region_subset(neighborhood(cell), region)) out.push_back(cell);
    } catch (const WindowTooSmallError&) {
      // cell's neighborhood leaves the window: not a candidate
    }
  }
  return out;
}

PHFunction cutoff_product(const Region& region, const PHFunction& a,
                          const PHFunction& b) {
  const int m = region.level() - 2;
  const PHFunction ae = a.extend_to_level(m);
  const PHFunction be = b.extend_to_level(m);
  std::map<LatticePoint, Rational> values;
  for (const ScaledVertex& v : vertices_scaled(region, m)) {
    values.emplace(vertex_point(v, m),
                   ae.value_scaled(v, m) * be.value_scaled(v, m));
  }
  return PHFunction::make(region, m, values);
}

struct CellContext {
  CellAddress K;
  PHFunction phi;  // cell cutoff, possibly pre-extended
};

InequalityReport check_cell_core(const CellContext& ctx,
                                 const std::string& fname, const PHFunction& f,
                                 const Rational& cms, int depth) {
  const Region& nk = ctx.phi.support();
  const int n = ctx.K.level();
  const Enclosure lhs = integral_f2_dgamma(f, ctx.phi, nk, depth);
  const Rational ef = dirichlet_energy(f, nk).value;
  const Enclosure mass = integral_f2_dm(f, nk, depth);

  InequalityReport rep;
  rep.kind = "lemma22";
  rep.instance = ctx.K.to_string();
  rep.function = fname;
  rep.n = n;
  rep.depth = depth;
  rep.lhs_upper = lhs.hi();
  rep.gamma_term = ef;
  rep.mass_lower = mass.lo();
  rep.coef_gamma = constants::kCellGammaCoef * cms;
  rep.coef_mass = Rational(constants::kCellMassCoef) *
                  constants::pow_scale_dw_dh(-n) / measure(nk);
  rep.rhs_lower = rep.coef_gamma * rep.gamma_term + rep.coef_mass * rep.mass_lower;
  rep.lhs_width = lhs.width();
  rep.mass_width = mass.width();
  rep.pass = rep.lhs_upper <= rep.rhs_lower;
  rep.id = "lemma22/" + rep.instance + "/" + fname;
  return rep;
}

struct CssContext {
  BallRegion ball;
  std::vector<PHFunction> parts;  // cell cutoffs of the core cells
};

CssContext make_css_context(const LatticePoint& x0, const Rational& r,
                            AmbientWindow w) {
  const int n = scale_from_radius(r);
  CssContext ctx{ball_cells(x0, r, n, w), {}};
  ctx.parts.reserve(ctx.ball.core.size());
  for (const CellAddress& cell : ctx.ball.core.cells())
    ctx.parts.push_back(cell_cutoff(cell));
  return ctx;
}

void extend_parts(CssContext& ctx, int depth) {
  for (PHFunction& part : ctx.parts) part = part.extend_to_level(depth);
}

InequalityReport check_css_core(const CssContext& ctx,
                                const std::string& fname, const PHFunction& f,
                                const Rational& cms, int depth,
                                bool with_direct) {
  const int n = ctx.ball.scale_level;
  const PHFunction fe = f.extend_to_level(depth);

  Enclosure lhs;
  for (const PHFunction& part : ctx.parts)
    lhs = lhs + integral_f2_dgamma(fe, part, part.support(), depth);

  const Rational ef = dirichlet_energy(fe, ctx.ball.enlarged).value;
  const Enclosure mass = integral_f2_dm(fe, ctx.ball.enlarged, depth);

  InequalityReport rep;
  rep.kind = "css";
  rep.instance = "x0=" + ctx.ball.center.to_string() + ";r=" +
                 ctx.ball.radius.to_string();
  rep.function = fname;
  rep.n = n;
  rep.radius = ctx.ball.radius;
  rep.depth = depth;
  rep.lhs_upper = lhs.hi();
  rep.gamma_term = ef;
  rep.mass_lower = mass.lo();
  rep.coef_gamma = constants::kBallGammaCoef * cms;
  rep.coef_mass =
      Rational(constants::kBallMassCoef) / radius_pow_upper(ctx.ball.radius);
  rep.rhs_lower = rep.coef_gamma * rep.gamma_term + rep.coef_mass * rep.mass_lower;
  rep.lhs_width = lhs.width();
  rep.mass_width = mass.width();
  rep.pass = rep.lhs_upper <= rep.rhs_lower;
  rep.id = "css/" + rep.instance + "/" + fname;
  if (with_direct) {
    const MaxPHFunction maxphi(ctx.parts);
    rep.direct_estimate =
        polarized_edge_sum(fe, maxphi, ctx.ball.enlarged, depth) / 2;
  }
  return rep;
}

int min_definition_level(const std::vector<SuiteFunction>& fns) {
  int m = fns.front().f.definition_level();
  for (const SuiteFunction& s : fns)
    m = std::min(m, s.f.definition_level());
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// Morrey-Sobolev estimate
// ---------------------------------------------------------------------------

Rational ms_ratio(const PHFunction& f, const LatticePoint& x,
                  const LatticePoint& y, const Region& nbhd) {
  const Rational num = square(f(x) - f(y));
  const Rational energy = dirichlet_energy(f, nbhd).value;
  if (energy.is_zero())
    throw DegenerateFunctionError("ms_ratio: zero-energy function");
  if (num.is_zero()) return 0;
  return num / (dist_pow_upper(dist2(x, y)) * energy);
}

CmsEstimate estimate_cms(const std::vector<int>& levels, int samples_per_level,
                         std::uint64_t seed) {
  if (levels.empty() || samples_per_level < 1)
    throw std::invalid_argument("estimate_cms: need levels and samples >= 1");
  CmsEstimate est;
  est.value = 0;
  est.levels = levels;
  for (const int n : levels) {
    SplitMix64 rng(seed);  // replayed per level: exactly self-similar sampling
    const CellAddress K = interior_cell(n);
    const Region nk = neighborhood(K);
    const std::set<LatticePoint> vertex_set = vertices(nk, n - 3);
    const std::vector<LatticePoint> verts(vertex_set.begin(), vertex_set.end());
    std::map<Rational, Rational> bound_cache;  // dist^2 -> distance-power bound
    Rational level_best(0);

    for (int s = 0; s < samples_per_level; ++s) {
      const auto values = random_values(nk, n - 2, rng, /*local=*/true);
      const PHFunction f = PHFunction::make_local(nk, n - 2, values);
      const Rational energy = dirichlet_energy(f, nk).value;
      if (energy.is_zero()) {
        ++est.samples_skipped;
        continue;
      }
      ++est.samples_used;
      const PHFunction fe = f.extend_to_level(n - 3);
      std::vector<Rational> fv;
      fv.reserve(verts.size());
      for (const LatticePoint& v : verts) fv.push_back(fe(v));
      for (std::size_t i = 0; i < verts.size(); ++i) {
        for (std::size_t j = i + 1; j < verts.size(); ++j) {
          const Rational num = square(fv[i] - fv[j]);
          if (num.is_zero()) continue;
          const Rational d2 = dist2(verts[i], verts[j]);
          auto it = bound_cache.find(d2);
          if (it == bound_cache.end())
            it = bound_cache.emplace(d2, dist_pow_upper(d2)).first;
          const Rational ratio = num / (it->second * energy);
          if (level_best < ratio) level_best = ratio;
        }
      }
    }
    est.per_level.emplace(n, level_best);
    if (est.value < level_best) est.value = level_best;
  }
  return est;
}

// ---------------------------------------------------------------------------
// Checks
// ---------------------------------------------------------------------------

InequalityReport check_cell_lemma(const CellAddress& K, const PHFunction& f,
                                  const Rational& cms, int depth) {
  CellContext ctx{K, cell_cutoff(K)};
  return check_cell_core(ctx, "f", f, cms, depth);
}

InequalityReport check_css(const LatticePoint& x0, const Rational& r,
                           const PHFunction& f, const Rational& cms, int depth,
                           AmbientWindow w, bool with_direct) {
  CssContext ctx = make_css_context(x0, r, w);
  return check_css_core(ctx, "f", f, cms, depth, with_direct);
}

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

SuiteKind suite_kind_from_string(const std::string& name) {
  if (name == "constants") return SuiteKind::Constants;
  if (name == "harmonic") return SuiteKind::Harmonic;
  if (name == "rough") return SuiteKind::Rough;
  if (name == "cutoffs") return SuiteKind::Cutoffs;
  if (name == "products") return SuiteKind::Products;
  if (name == "mixed") return SuiteKind::Mixed;
  throw std::invalid_argument("unknown suite kind '" + name + "'");
}

std::string to_string(SuiteKind kind) {
  switch (kind) {
    case SuiteKind::Constants: return "constants";
    case SuiteKind::Harmonic: return "harmonic";
    case SuiteKind::Rough: return "rough";
    case SuiteKind::Cutoffs: return "cutoffs";
    case SuiteKind::Products: return "products";
    case SuiteKind::Mixed: return "mixed";
  }
  return "?";
}

std::vector<SuiteFunction> suite(SuiteKind kind, const Region& region,
                                 std::uint64_t seed, int count) {
  std::vector<SuiteFunction> out;
  if (count <= 0) return out;
  SplitMix64 rng(seed);
  const int lev = region.level();
  int harmonic_idx = 0;
  int rough_idx = 0;

  auto add_constant = [&](const Rational& c) {
    out.push_back({"const:" + c.to_string(), PHFunction::constant(region, c)});
  };
  auto add_harmonic = [&] {
    const auto values = random_values(region, lev, rng, /*local=*/false);
    out.push_back({"harm:" + std::to_string(harmonic_idx++),
                   PHFunction::make(region, lev, values)});
  };
  auto add_rough = [&](int k) {
    const auto values = random_values(region, lev - k, rng, /*local=*/false);
    out.push_back({"rough" + std::to_string(k) + ":" +
                       std::to_string(rough_idx++),
                   PHFunction::make(region, lev - k, values)});
  };

  const std::vector<Rational> base_constants = {Rational(0), Rational(1),
                                                Rational(-7, 3)};
  switch (kind) {
    case SuiteKind::Constants: {
      for (int i = 0; i < count; ++i) {
        if (i < static_cast<int>(base_constants.size()))
          add_constant(base_constants[i]);
        else
          add_constant(Rational(static_cast<long>(i - 1)));
      }
      break;
    }
    case SuiteKind::Harmonic: {
      for (int i = 0; i < count; ++i) add_harmonic();
      break;
    }
    case SuiteKind::Rough: {
      for (int i = 0; i < count; ++i) add_rough(1 + i % 3);
      break;
    }
    case SuiteKind::Cutoffs: {
      const auto candidates = cutoff_candidates(region);
      for (int i = 0; i < count && i < static_cast<int>(candidates.size());
           ++i) {
        out.push_back({"cutoff:" + candidates[i].to_string(),
                       cell_cutoff(candidates[i])});
      }
      break;
    }
    case SuiteKind::Products: {
      const auto candidates = cutoff_candidates(region);
      std::vector<PHFunction> cuts;
      for (const CellAddress& c : candidates) cuts.push_back(cell_cutoff(c));
      int made = 0;
      for (std::size_t i = 0; i < cuts.size() && made < count; ++i) {
        for (std::size_t j = i; j < cuts.size() && made < count; ++j) {
          out.push_back({"prod:" + candidates[i].to_string() + "*" +
                             candidates[j].to_string(),
                         cutoff_product(region, cuts[i], cuts[j])});
          ++made;
        }
      }
      break;
    }
    case SuiteKind::Mixed: {
      for (const Rational& c : base_constants) add_constant(c);
      for (int i = 0; i < 5; ++i) add_harmonic();
      for (int k = 1; k <= 3; ++k) {
        add_rough(k);
        add_rough(k);
      }
      const auto candidates = cutoff_candidates(region);
      std::vector<PHFunction> cuts;
      for (const CellAddress& c : candidates) cuts.push_back(cell_cutoff(c));
      for (std::size_t i = 0; i < cuts.size() && i < 2; ++i)
        out.push_back({"cutoff:" + candidates[i].to_string(), cuts[i]});
      int prods = 0;
      for (std::size_t i = 0; i < cuts.size() && prods < 4; ++i) {
        for (std::size_t j = i; j < cuts.size() && prods < 4; ++j) {
          out.push_back({"prod:" + candidates[i].to_string() + "*" +
                             candidates[j].to_string(),
                         cutoff_product(region, cuts[i], cuts[j])});
          ++prods;
        }
      }
      while (static_cast<int>(out.size()) < count) {
        add_harmonic();
        if (static_cast<int>(out.size()) < count) add_rough(1 + rough_idx % 3);
      }
      break;
    }
  }
  if (static_cast<int>(out.size()) > count)
    out.erase(out.begin() + count, out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Sweep drivers
// ---------------------------------------------------------------------------

CellAddress interior_cell(int n, int index) {
  switch (index) {
    case 0: return CellAddress(AmbientWindow{n + 2}, "21");
    case 1: return CellAddress(AmbientWindow{n + 2}, "23");
    case 2: return CellAddress(AmbientWindow{n + 3}, "212");
    default:
      throw std::invalid_argument("interior_cell: index must be 0, 1 or 2");
  }
}

CellAddress origin_cell(int n, int window_level) {
  if (n > window_level)
    throw std::invalid_argument("origin_cell: level coarser than window");
  return CellAddress(AmbientWindow{window_level},
                     std::string(static_cast<std::size_t>(window_level - n), '1'));
}

std::vector<BallSpec> default_balls(int n_lo, int n_hi) {
  std::vector<BallSpec> out;
  for (int n = n_lo; n <= n_hi; ++n) {
    const AmbientWindow w{n + 3};
    const Rational r = Rational::pow2(n - 1);
    out.push_back({w, LatticePoint{0, 0}, r, "origin"});
    out.push_back({w, LatticePoint{Rational::pow2(w.level - 1), 0}, r, "edge"});
    out.push_back({w,
                   LatticePoint{Rational::pow2(w.level - 2),
                                Rational::pow2(w.level - 2)},
                   r, "inner"});
  }
  return out;
}

std::vector<InequalityReport> check_css_suite(const LatticePoint& x0,
                                              const Rational& r,
                                              AmbientWindow w, SuiteKind kind,
                                              int count, std::uint64_t seed,
                                              const Rational& cms,
                                              int depth_offset,
                                              bool with_direct) {
  CssContext ctx = make_css_context(x0, r, w);
  const auto fns = suite(kind, ctx.ball.enlarged, seed, count);
  if (fns.empty()) return {};
  extend_parts(ctx, min_definition_level(fns) - depth_offset);
  std::vector<InequalityReport> reports;
  reports.reserve(fns.size());
  for (const SuiteFunction& s : fns) {
    const int depth = s.f.definition_level() - depth_offset;
    reports.push_back(check_css_core(ctx, s.name, s.f, cms, depth, with_direct));
  }
  return reports;
}

std::vector<InequalityReport> check_cell_suite(const CellAddress& K,
                                               SuiteKind kind, int count,
                                               std::uint64_t seed,
                                               const Rational& cms,
                                               int depth_offset) {
  CellContext ctx{K, cell_cutoff(K)};
  const auto fns = suite(kind, ctx.phi.support(), seed, count);
  if (fns.empty()) return {};
  ctx.phi = ctx.phi.extend_to_level(min_definition_level(fns) - depth_offset);
  std::vector<InequalityReport> reports;
  reports.reserve(fns.size());
  for (const SuiteFunction& s : fns) {
    const int depth = s.f.definition_level() - depth_offset;
    reports.push_back(check_cell_core(ctx, s.name, s.f, cms, depth));
  }
  return reports;
}

SweepOutcome run_css_sweep(const SweepOptions& options) {
  SweepOutcome outcome;
  outcome.cms =
      estimate_cms(options.cms_levels, options.cms_samples_per_level,
                   options.seed);
  SplitMix64 master(options.seed);
  int ball_index = 0;
  for (const BallSpec& ball : default_balls(options.n_lo, options.n_hi)) {
    const std::uint64_t instance_seed = master.next();
    auto reports = check_css_suite(
        ball.x0, ball.r, ball.window, options.suite_kind,
        options.functions_per_instance, instance_seed, outcome.cms.value,
        options.depth_offset, /*with_direct=*/false);
    for (InequalityReport& rep : reports) {
      rep.id = "css/b" + std::to_string(ball_index) + "-" + ball.tag + "/" +
               rep.function;
      outcome.reports.push_back(std::move(rep));
    }
    ++ball_index;
  }
  outcome.all_pass = std::all_of(outcome.reports.begin(),
                                 outcome.reports.end(),
                                 [](const InequalityReport& r) { return r.pass; });
  return outcome;
}

SweepOutcome run_lemma22_sweep(const SweepOptions& options) {
  SweepOutcome outcome;
  outcome.cms =
      estimate_cms(options.cms_levels, options.cms_samples_per_level,
                   options.seed);
  SplitMix64 master(options.seed);
  int cell_index = 0;
  for (int n = options.n_lo; n <= options.n_hi; ++n) {
    for (int idx = 0; idx < 3; ++idx) {
      const CellAddress K = interior_cell(n, idx);
      const std::uint64_t instance_seed = master.next();
      auto reports = check_cell_suite(K, options.suite_kind,
                                      options.functions_per_instance,
                                      instance_seed, outcome.cms.value,
                                      options.depth_offset);
      for (InequalityReport& rep : reports) {
        rep.id = "lemma22/c" + std::to_string(cell_index) + "/" + rep.function;
        outcome.reports.push_back(std::move(rep));
      }
      ++cell_index;
    }
  }
  outcome.all_pass = std::all_of(outcome.reports.begin(),
                                 outcome.reports.end(),
                                 [](const InequalityReport& r) { return r.pass; });
  return outcome;
}

// ---------------------------------------------------------------------------
// Volume-doubling probe
// ---------------------------------------------------------------------------

namespace {

Enclosure ball_measure_enclosure(const LatticePoint& x0, const Rational& r,
                                 AmbientWindow w) {
  long k = 0;
  if (!dyadic_power(r, &k))
    throw std::invalid_argument("vd_probe: radii must be dyadic");
  const int n = static_cast<int>(k) + 1;  // 2^(n-1) <= r < 2^n
  if (n > w.level)
    throw WindowTooSmallError("vd_probe: radius exceeds the window scale");
  const CellAddress K = locate_cell(x0, n, w);
  const Region nk = neighborhood(K);  // covers B(x0, r)
  const int j = static_cast<int>(k) - 3;
  const Rational r2 = r * r;
  const Rational outer_reach = square(r + Rational::pow2(j));
  long inner = 0;
  long outer = 0;
  for_each_descendant(nk, j, j, [&](ScaledCell c) {
    const LatticePoint p1 = vertex_point({c.i, c.j}, j);
    const LatticePoint p2 = vertex_point({c.i + 1, c.j}, j);
    const LatticePoint p3 = vertex_point({c.i, c.j + 1}, j);
    const Rational d1 = dist2(p1, x0), d2 = dist2(p2, x0), d3 = dist2(p3, x0);
    if (d1 < r2 && d2 < r2 && d3 < r2) ++inner;  // convexity: cell inside B
    if (min(min(d1, d2), d3) < outer_reach) ++outer;
  });
  const Rational cell_mass = Rational::pow3(j);
  return Enclosure(Rational(inner) * cell_mass, Rational(outer) * cell_mass);
}

}  // namespace

std::vector<VdRow> vd_probe(const LatticePoint& x0,
                            const std::vector<Rational>& radii,
                            AmbientWindow w) {
  std::vector<VdRow> rows;
  for (const Rational& r : radii) {
    VdRow row;
    row.r = r;
    row.volume_r = ball_measure_enclosure(x0, r, w);
    row.volume_2r = ball_measure_enclosure(x0, r * 2, w);
    row.ratio = Enclosure(row.volume_2r.lo() / row.volume_r.hi(),
                          row.volume_2r.hi() / row.volume_r.lo());
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace sierp
