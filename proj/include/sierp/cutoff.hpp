#pragma once

#include <vector>

#include "sierp/energy_measure.hpp"

namespace sierp {

/// The cell cutoff: 1 on K, 0 on and outside the boundary of N(K), harmonic
/// on each neighbor cell. Support N(K), definition level = level(K).
/// Throws WindowTooSmallError when N(K) does not fit the window.
PHFunction cell_cutoff(const CellAddress& K);

/// Pointwise maximum of finitely many piecewise-harmonic functions (zero
/// outside all supports). The max is generally not piecewise-harmonic, so
/// its graph energies need not stabilize; rigorous bounds route through
/// markov_bound_table instead.
class MaxPHFunction {
 public:
  explicit MaxPHFunction(std::vector<PHFunction> parts);

  const std::vector<PHFunction>& parts() const { return parts_; }
  const Region& union_support() const { return union_support_; }
  int min_definition_level() const;

  Rational operator()(const LatticePoint& p) const;

  /// Max values on vertices(region, m), keyed at scale m.
  PHFunction::VertexValues materialize(const Region& region, int m) const;

  /// Copy with every part materialized down to level m (for reuse across
  /// repeated level sweeps).
  MaxPHFunction extended_to(int m) const;

 private:
  std::vector<PHFunction> parts_;
  Region union_support_;
};

/// The ball cutoff: parts are the cell cutoffs of every level-n cell in
/// N(K), where 2^(n-1) <= r < 2^n and K is the level-n cell containing x0.
/// The max is 1 on N(K) (so on B(x0,r)) and 0 outside B(x0,8r).
MaxPHFunction ball_cutoff(const LatticePoint& x0, const Rational& r,
                          AmbientWindow w);

/// Per-cell upper bounds for Gamma(max,max): entry(C) = sum over parts of
/// Gamma(part,part)(C). This is the rigorous route for bounding the max
/// function's energy measure.
CellMeasureTable markov_bound_table(const MaxPHFunction& phi, int m);

/// Graph energy of the max function at level m over the region (finite-level
/// value; bounded above by the sum of the parts' energies at every level).
Rational graph_energy(const MaxPHFunction& phi, const Region& region, int m);

/// Polarized edge sum against a max function (diagnostics for the direct,
/// non-rigorous estimate of integral f^2 dGamma(max,max)).
Rational polarized_edge_sum(const PHFunction& f, const MaxPHFunction& phi,
                            const Region& region, int m);

}  // namespace sierp
