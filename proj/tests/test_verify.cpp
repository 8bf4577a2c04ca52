#include <doctest.h>

#include <cmath>

#include "sierp/report.hpp"
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

}  // namespace

TEST_CASE("constant bookkeeping between the cell and ball inequalities") {
  CHECK(constants::kBallGammaCoef == Rational(4) * constants::kCellGammaCoef);
  CHECK(Rational(constants::kBallMassCoef) ==
        Rational(4) * Rational(constants::kCellMassCoef));
  CHECK(constants::kCellGammaCoef == Rational(200, 3));
  CHECK(constants::kBallGammaCoef == Rational(800, 3));
}

TEST_CASE("dyadic dimension facts") {
  CHECK(constants::pow_scale_dw(1) == 5);    // 2^{d_w} = 5
  CHECK(constants::pow_scale_dh(1) == 3);    // 2^{d_h} = 3
  CHECK(constants::pow_scale_dw_dh(1) == Rational(5, 3));
  for (long k = -6; k <= 6; ++k) {
    CHECK(constants::pow_scale_dw(k) == Rational::pow(Rational(5), k));
    CHECK(constants::pow_scale_dw_dh(k) == Rational::pow(Rational(5, 3), k));
    CHECK(radius_pow_upper(Rational::pow2(k)) == constants::pow_scale_dw(k));
    CHECK(dist_pow_upper(Rational::pow(Rational(4), k)) ==
          constants::pow_scale_dw_dh(k));
  }
}

TEST_CASE("directed power bounds are upper bounds and tight") {
  SplitMix64 rng(101);
  const double alpha_dist = std::log(5.0 / 3.0) / (2.0 * std::log(2.0));
  const double alpha_walk = std::log(5.0) / std::log(2.0);
  for (int i = 0; i < 200; ++i) {
    const Rational q(1 + static_cast<long>(rng.below(5000)),
                     1 + static_cast<long>(rng.below(500)));
    const double qd = q.to_double();

    const double dist_true = std::pow(qd, alpha_dist);
    const double dist_bound = dist_pow_upper(q).to_double();
    CHECK(dist_bound >= dist_true * (1 - 1e-12));
    CHECK(dist_bound <= dist_true * (1 + 1e-9));

    const double walk_true = std::pow(qd, alpha_walk);
    const double walk_bound = radius_pow_upper(q).to_double();
    CHECK(walk_bound >= walk_true * (1 - 1e-12));
    CHECK(walk_bound <= walk_true * (1 + 1e-9));
  }
  CHECK(dist_pow_upper(Rational(0)) == 0);
  CHECK_THROWS_AS(radius_pow_upper(Rational(0)), std::invalid_argument);
}

TEST_CASE("morrey ratio hand check") {
  const PHFunction f = unit_harmonic(1, 0, 0);
  const auto corners = cell_corners(f.support().cells().front());
  // Corner pair at distance 1: ratio = (1-0)^2 / (1 * E) with E = 2.
  CHECK(ms_ratio(f, corners[0], corners[1], f.support()) == Rational(1, 2));
  // Equal values contribute nothing.
  CHECK(ms_ratio(f, corners[1], corners[2], f.support()) == 0);

  const PHFunction c = PHFunction::constant(f.support(), Rational(3));
  CHECK_THROWS_AS(ms_ratio(c, corners[0], corners[1], c.support()),
                  DegenerateFunctionError);
}

TEST_CASE("cms estimate: determinism and exact scale equivariance") {
  const CmsEstimate a = estimate_cms({-1, 0, 1}, 10, 2024);
  const CmsEstimate b = estimate_cms({-1, 0, 1}, 10, 2024);
  CHECK(a.value == b.value);
  CHECK(a.per_level == b.per_level);
  CHECK(a.samples_used == 30);
  CHECK(a.value.sign() > 0);

  // The per-level construction is exactly self-similar, so adjacent levels
  // give (up to the directed-rounding grid) the same estimate; well inside
  // the 5% acceptance corridor, typically equal to ~60 digits.
  const Rational lo = a.per_level.at(0) * Rational(19, 20);
  const Rational hi = a.per_level.at(0) * Rational(21, 20);
  CHECK(lo <= a.per_level.at(-1));
  CHECK(a.per_level.at(-1) <= hi);
  CHECK(lo <= a.per_level.at(1));
  CHECK(a.per_level.at(1) <= hi);
}

TEST_CASE("cell inequality: constants calibrate to the exact ratio 1/4") {
  const Rational cms(1, 2);
  for (int n : {-2, 0, 3}) {
    for (const Rational& c : {Rational(1), Rational(-7, 3), Rational(5, 4)}) {
      const CellAddress K = interior_cell(n);
      const PHFunction f =
          PHFunction::constant(neighborhood(K), c);
      const InequalityReport rep = check_cell_lemma(K, f, cms, n - 4);
      CHECK(rep.pass);
      CHECK(rep.lhs_width == 0);  // constants give point enclosures
      CHECK(Rational(4) * rep.lhs_upper == rep.rhs_lower);
      CHECK(rep.lhs_upper ==
            Rational(6) * c * c * Rational::pow(Rational(3, 5), n));
    }
  }
}

TEST_CASE("cell inequality: zero function and the cutoff itself") {
  const CellAddress K = interior_cell(0);
  const Rational cms(1, 2);
  const PHFunction zero = PHFunction::constant(neighborhood(K), Rational(0));
  const InequalityReport rz = check_cell_lemma(K, zero, cms, -5);
  CHECK(rz.pass);
  CHECK(rz.lhs_upper == 0);
  CHECK(rz.rhs_lower == 0);

  const PHFunction phi = cell_cutoff(K);
  const InequalityReport rp = check_cell_lemma(K, phi, cms, -6);
  CHECK(rp.pass);
  CHECK(rp.slack().sign() > 0);
}

TEST_CASE("cell inequality: exact scale covariance of reports") {
  const Rational cms(2, 5);
  for (int n : {-2, 1}) {
    const auto reports_a = check_cell_suite(interior_cell(n),
                                            SuiteKind::Mixed, 8, 99, cms, 4);
    const auto reports_b = check_cell_suite(interior_cell(n + 1),
                                            SuiteKind::Mixed, 8, 99, cms, 4);
    REQUIRE(reports_a.size() == reports_b.size());
    for (std::size_t i = 0; i < reports_a.size(); ++i) {
      CHECK(reports_a[i].pass == reports_b[i].pass);
      // Identical LHS/RHS ratios as exact rationals (cross-multiplied).
      CHECK(reports_a[i].lhs_upper * reports_b[i].rhs_lower ==
            reports_b[i].lhs_upper * reports_a[i].rhs_lower);
    }
  }
}

TEST_CASE("deeper enclosures never flip pass to fail") {
  const CellAddress K = interior_cell(0);
  const Rational cms(1, 2);
  SplitMix64 rng(7);
  const auto fns = suite(SuiteKind::Mixed, neighborhood(K), 7, 6);
  for (const SuiteFunction& s : fns) {
    const int d0 = s.f.definition_level() - 3;
    const InequalityReport shallow = check_cell_lemma(K, s.f, cms, d0);
    const InequalityReport deep = check_cell_lemma(K, s.f, cms, d0 - 2);
    CHECK(deep.lhs_upper <= shallow.lhs_upper);
    CHECK(deep.rhs_lower >= shallow.rhs_lower);
    if (shallow.pass) CHECK(deep.pass);
  }
}

TEST_CASE("ball inequality: constants pass with exact part energies") {
  const Rational cms(1, 2);
  const AmbientWindow w{4};
  const LatticePoint x0{Rational::pow2(3), 0};
  const Rational r(1, 2);
  const PHFunction f = PHFunction::constant(
      ball_cells(x0, r, 0, w).enlarged, Rational(-7, 3));
  const InequalityReport rep = check_css(x0, r, f, cms, -6, w);
  CHECK(rep.pass);
  // Four interior parts, each with energy 6, times c^2.
  CHECK(rep.lhs_upper == Rational(24) * Rational(49, 9));
  CHECK(rep.coef_mass == Rational(96) / radius_pow_upper(r));
  CHECK(rep.rhs_lower == rep.coef_gamma * rep.gamma_term +
                             rep.coef_mass * rep.mass_lower);
}

TEST_CASE("ball inequality: non-dyadic radii stay conservative") {
  const AmbientWindow w{4};
  const LatticePoint x0{Rational::pow2(3), 0};
  const Rational r(3, 5);  // scale level 0, non-dyadic
  const PHFunction f =
      PHFunction::constant(ball_cells(x0, r, 0, w).enlarged, Rational(1));
  const InequalityReport rep = check_css(x0, r, f, Rational(1, 2), -6, w);
  CHECK(rep.pass);
  // The mass coefficient uses an upper bound of r^{d_w}: smaller than the
  // dyadic-5^0 coefficient at r = 1 and larger than at r = 1/2... precisely,
  // 96 / bound with bound in (5^{-1}, 5^0).
  CHECK(rep.coef_mass < Rational(96) * Rational(5));
  CHECK(rep.coef_mass > Rational(96) / Rational(5));
}

TEST_CASE("suites are deterministic and well-formed") {
  const Region nk = neighborhood(interior_cell(0));
  const auto a = suite(SuiteKind::Mixed, nk, 31, 20);
  const auto b = suite(SuiteKind::Mixed, nk, 31, 20);
  REQUIRE(a.size() == 20);
  REQUIRE(b.size() == 20);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].name == b[i].name);
    CHECK(a[i].f.values_at(a[i].f.definition_level()) ==
          b[i].f.values_at(b[i].f.definition_level()));
  }

  const auto consts = suite(SuiteKind::Constants, nk, 1, 3);
  REQUIRE(consts.size() == 3);
  CHECK(consts[0].f(cell_corners(interior_cell(0))[0]) == 0);
  CHECK(consts[1].f(cell_corners(interior_cell(0))[0]) == 1);
  CHECK(consts[2].f(cell_corners(interior_cell(0))[0]) == Rational(-7, 3));

  // Strict suite members vanish on the region's boundary.
  for (const auto& s : suite(SuiteKind::Harmonic, nk, 5, 4)) {
    CHECK(!s.f.local());
    for (const LatticePoint& bdry : region_boundary_vertices(nk))
      CHECK(s.f(bdry) == 0);
  }

  // The only in-region cutoff of a plain neighborhood is the center cell.
  const auto cuts = suite(SuiteKind::Cutoffs, nk, 1, 8);
  REQUIRE(cuts.size() == 1);
  CHECK(cuts[0].name == "cutoff:" + interior_cell(0).to_string());
}

TEST_CASE("volume doubling probe") {
  const auto rows =
      vd_probe(LatticePoint{0, 0}, {Rational(1), Rational(2)}, AmbientWindow{6});
  REQUIRE(rows.size() == 2);
  for (const VdRow& row : rows) {
    CHECK(row.volume_r.lo().sign() > 0);
    CHECK(row.ratio.lo() >= Rational(1));
    CHECK(row.ratio.hi() <= Rational(9));
    // Doubling at the origin scales the gasket exactly: the true ratio is 3.
    CHECK(row.ratio.contains(Rational(3)));
  }
  CHECK_THROWS_AS(
      vd_probe(LatticePoint{0, 0}, {Rational(64)}, AmbientWindow{6}),
      WindowTooSmallError);
  CHECK_THROWS_AS(
      vd_probe(LatticePoint{0, 0}, {Rational(3, 5)}, AmbientWindow{6}),
      std::invalid_argument);
}

TEST_CASE("report serialization and independent recheck") {
  const CellAddress K = interior_cell(0);
  const Rational cms(1, 2);
  ReportFile report;
  report.config = nlohmann::json{{"command", "test"}};
  report.cms = cms;
  report.instances = check_cell_suite(K, SuiteKind::Mixed, 6, 77, cms, 4);

  const nlohmann::json j = report_to_json(report);
  const ReportFile back = report_from_json(j);
  CHECK(back.cms == report.cms);
  REQUIRE(back.instances.size() == report.instances.size());
  for (std::size_t i = 0; i < back.instances.size(); ++i) {
    CHECK(back.instances[i].lhs_upper == report.instances[i].lhs_upper);
    CHECK(back.instances[i].rhs_lower == report.instances[i].rhs_lower);
    CHECK(back.instances[i].pass == report.instances[i].pass);
  }

  const RecheckResult ok = recheck_report(j);
  CHECK(ok.checked == 6);
  CHECK(ok.all_pass());

  // Tampering with a serialized rational is caught.
  nlohmann::json bad = j;
  bad["instances"][0]["rhs_lower"] = "1/7";
  const RecheckResult broken = recheck_report(bad);
  CHECK(!broken.consistent());
}

TEST_CASE("phfunction json round-trip") {
  const PHFunction phi = cell_cutoff(interior_cell(0));
  const nlohmann::json j = phfunction_to_json(phi);
  const PHFunction back = phfunction_from_json(j);
  CHECK(back.support() == phi.support());
  CHECK(back.definition_level() == phi.definition_level());
  CHECK(back.values_at(0) == phi.values_at(0));
  CHECK(dirichlet_energy(back, back.support()).value ==
        dirichlet_energy(phi, phi.support()).value);
}

TEST_CASE("sweep csv is deterministic") {
  SweepOptions options;
  options.seed = 5;
  options.functions_per_instance = 3;
  options.depth_offset = 3;
  options.n_lo = 0;
  options.n_hi = 0;
  options.suite_kind = SuiteKind::Constants;
  options.cms_samples_per_level = 5;
  const SweepOutcome a = run_lemma22_sweep(options);
  const SweepOutcome b = run_lemma22_sweep(options);
  CHECK(sweep_csv(a.reports) == sweep_csv(b.reports));
  CHECK(a.all_pass);
  // Constants on interior cells: the ratio column is exactly 1/4.
  for (const InequalityReport& rep : a.reports) {
    if (rep.lhs_upper.is_zero()) continue;
    CHECK(Rational(4) * rep.lhs_upper == rep.rhs_lower);
  }
}
