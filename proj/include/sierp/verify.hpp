#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sierp/cutoff.hpp"
#include "sierp/powbound.hpp"

namespace sierp {

// ---------------------------------------------------------------------------
// Constants of the two inequalities, kept in one place so the arithmetic
// relations between them can be asserted.
// ---------------------------------------------------------------------------
namespace constants {

// Cell inequality: integral f^2 dGamma(phi_K,phi_K) over N(K)
//   <= (200/3) * C_MS * integral dGamma(f,f) over N(K)
//    + 24 * (3/5)^n * mean of f^2 over N(K).
inline const Rational kCellGammaCoef = Rational(200, 3);  // times C_MS
inline const long kCellMassCoef = 24;                     // times (3/5)^n

// Ball inequality (cutoff Sobolev form CSS at Psi(r) = r^{d_w}):
//   integral f^2 dGamma(phi,phi) over B(x0,8r)
//   <= (800/3) * C_MS * integral dGamma(f,f) + (96 / r^{d_w}) * integral f^2 dm.
inline const Rational kBallGammaCoef = Rational(800, 3);  // times C_MS
inline const long kBallMassCoef = 96;

/// (2^k)^{d_w} = 5^k, exact.
inline Rational pow_scale_dw(long k) { return Rational::pow(Rational(5), k); }
/// (2^k)^{d_h} = 3^k, exact.
inline Rational pow_scale_dh(long k) { return Rational::pow(Rational(3), k); }
/// (2^k)^{d_w - d_h} = (5/3)^k, exact.
inline Rational pow_scale_dw_dh(long k) {
  return Rational::pow(Rational(5, 3), k);
}

}  // namespace constants

// ---------------------------------------------------------------------------
// Morrey-Sobolev constant estimation.
// ---------------------------------------------------------------------------

/// Certified lower bound of the Morrey-Sobolev constant: a maximum of exactly
/// evaluated ratios |f(x)-f(y)|^2 / (d(x,y)^{d_w-d_h} * E(f; N(K))), the
/// distance power replaced by a certified upper bound.
struct CmsEstimate {
  Rational value;
  int samples_used = 0;
  int samples_skipped = 0;
  std::vector<int> levels;
  std::map<int, Rational> per_level;
};

/// The ratio behind the estimate for one function and one vertex pair.
/// Throws DegenerateFunctionError when the energy over nbhd is zero.
Rational ms_ratio(const PHFunction& f, const LatticePoint& x,
                  const LatticePoint& y, const Region& nbhd);

/// Samples random piecewise-harmonic functions on interior-cell
/// neighborhoods at each level (values at level n-2, ratios over all vertex
/// pairs at level n-3). The same stream is replayed per level, so the
/// construction is exactly self-similar across scales.
CmsEstimate estimate_cms(const std::vector<int>& levels, int samples_per_level,
                         std::uint64_t seed);

// ---------------------------------------------------------------------------
// Inequality checks. A "pass" verdict certifies the exact rational
// inequality lhs_upper <= rhs_lower, hence the true inequality for this
// instance.
// ---------------------------------------------------------------------------

struct InequalityReport {
  std::string id;
  std::string kind;      // "lemma22" | "css"
  std::string instance;  // cell address, or "x0=..;r=.."
  std::string function;
  int n = 0;  // cell scale level
  std::optional<Rational> radius;
  int depth = 0;
  Rational lhs_upper;
  Rational gamma_term;   // exact lower bound of integral dGamma(f,f)
  Rational mass_lower;   // lower bound of integral f^2 dm
  Rational coef_gamma;   // multiplies gamma_term in the RHS
  Rational coef_mass;    // multiplies mass_lower in the RHS
  Rational rhs_lower;    // == coef_gamma*gamma_term + coef_mass*mass_lower
  Rational lhs_width;
  Rational mass_width;
  std::optional<Rational> direct_estimate;  // diagnostics only
  bool pass = false;

  Rational slack() const { return rhs_lower - lhs_upper; }
};

/// Checks the cell inequality for one cell and one test function at the
/// given enclosure depth (all arithmetic exact at dyadic scales).
InequalityReport check_cell_lemma(const CellAddress& K, const PHFunction& f,
                                  const Rational& cms, int depth);

/// Checks the ball inequality CSS(d_w). The LHS is bounded by the sum of the
/// per-part enclosures (the Markov-subadditivity route); for non-dyadic r
/// the coefficient 96 / r^{d_w} is rounded down, keeping the check
/// conservative.
InequalityReport check_css(const LatticePoint& x0, const Rational& r,
                           const PHFunction& f, const Rational& cms, int depth,
                           AmbientWindow w, bool with_direct = false);

// ---------------------------------------------------------------------------
// Test-function suites (deterministic by seed).
// ---------------------------------------------------------------------------

enum class SuiteKind { Constants, Harmonic, Rough, Cutoffs, Products, Mixed };

SuiteKind suite_kind_from_string(const std::string& name);
std::string to_string(SuiteKind kind);

struct SuiteFunction {
  std::string name;
  PHFunction f;
};

/// Families: constants {0, 1, -7/3}; random per-cell harmonic with matching
/// shared-vertex values; rough functions with random values at level-k for
/// k in {1,2,3} below the region level; the cell cutoffs contained in the
/// region; pointwise products of those cutoffs resampled two levels down.
std::vector<SuiteFunction> suite(SuiteKind kind, const Region& region,
                                 std::uint64_t seed, int count);

// ---------------------------------------------------------------------------
// Sweep drivers (shared by the CLI and the acceptance suite).
// ---------------------------------------------------------------------------

struct BallSpec {
  AmbientWindow window;
  LatticePoint x0;
  Rational r;
  std::string tag;
};

/// Three balls per level in [n_lo, n_hi]: origin-anchored (3 parts) plus two
/// interior centers (4 parts), all with the dyadic radius 2^(n-1).
std::vector<BallSpec> default_balls(int n_lo, int n_hi);

/// Interior (4-cell-neighborhood) test cells per level; `index` in {0,1,2}.
CellAddress interior_cell(int n, int index = 0);
CellAddress origin_cell(int n, int window_level);

struct SweepOptions {
  std::uint64_t seed = 1;
  int functions_per_instance = 20;
  int depth_offset = 6;  // enclosure depth = definition level - offset
  int n_lo = -3;
  int n_hi = 3;
  SuiteKind suite_kind = SuiteKind::Mixed;
  int cms_samples_per_level = 70;
  std::vector<int> cms_levels = {-1, 0, 1};
};

struct SweepOutcome {
  CmsEstimate cms;
  std::vector<InequalityReport> reports;
  bool all_pass = false;
};

SweepOutcome run_css_sweep(const SweepOptions& options);
SweepOutcome run_lemma22_sweep(const SweepOptions& options);

/// Suite + per-ball context for a single CSS instance (used by the CLI).
std::vector<InequalityReport> check_css_suite(const LatticePoint& x0,
                                              const Rational& r,
                                              AmbientWindow w,
                                              SuiteKind kind, int count,
                                              std::uint64_t seed,
                                              const Rational& cms,
                                              int depth_offset,
                                              bool with_direct);

std::vector<InequalityReport> check_cell_suite(const CellAddress& K,
                                               SuiteKind kind, int count,
                                               std::uint64_t seed,
                                               const Rational& cms,
                                               int depth_offset);

// ---------------------------------------------------------------------------
// Volume-doubling probe.
// ---------------------------------------------------------------------------

struct VdRow {
  Rational r;
  Enclosure volume_r;    // m(B(x0, r))
  Enclosure volume_2r;   // m(B(x0, 2r))
  Enclosure ratio;       // V(x0,2r) / V(x0,r)
};

/// Ball-measure enclosures from inner/outer cell approximations at dyadic
/// radii. Throws WindowTooSmallError when the doubled ball leaves the window.
std::vector<VdRow> vd_probe(const LatticePoint& x0,
                            const std::vector<Rational>& radii,
                            AmbientWindow w);

}  // namespace sierp
