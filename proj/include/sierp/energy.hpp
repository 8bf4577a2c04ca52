#pragma once

#include <array>
#include <map>
#include <memory>

#include "sierp/geometry.hpp"

namespace sierp {

/// The unique energy-conserving refinement of a cell: each edge midpoint
/// gets (2*u_i + 2*u_j + u_k) / 5. Returns (m12, m13, m23).
std::array<Rational, 3> harmonic_extend_cell(const Rational& u1,
                                             const Rational& u2,
                                             const Rational& u3);

struct EnergyValue {
  Rational value;
  int stabilized_at = 0;
};

/// Piecewise-harmonic function: exact rational values prescribed on the
/// vertices of a support region at a definition level, extended harmonically
/// below, and identically zero outside the support.
///
/// The strict construction (`make`) additionally requires the values to
/// vanish on the support's boundary vertices, so the zero extension is
/// globally continuous. `make_local` skips that rule: it represents the
/// restriction of some globally-defined finite-energy function (e.g. a
/// nonzero constant) to the region, and operations that would rely on the
/// zero extension outside the support reject such functions.
class PHFunction {
 public:
  using VertexValues = std::map<ScaledVertex, Rational>;

  static PHFunction make(Region support, int def_level,
                         const std::map<LatticePoint, Rational>& values);
  static PHFunction make_local(Region support, int def_level,
                               const std::map<LatticePoint, Rational>& values);
  static PHFunction constant(Region support, const Rational& c);

  const Region& support() const { return support_; }
  int definition_level() const { return def_level_; }
  int materialized_level() const { return mat_level_; }
  bool local() const { return local_; }

  /// Value at a lattice point: zero outside the support. The point must be
  /// materialized (level >= materialized_level()) when inside; throws
  /// std::invalid_argument otherwise.
  Rational operator()(const LatticePoint& p) const;

  /// Value at an integer-scaled vertex given at scale `scale`
  /// (scale <= materialized_level()); zero when absent from the support.
  const Rational& value_scaled(ScaledVertex v, int scale) const;

  /// Same function with values materialized down to level m (no-op when
  /// already that deep). Copies are cheap: values are shared.
  PHFunction extend_to_level(int m) const;

  /// Vertex values on vertices(support, m), materializing as needed.
  std::map<LatticePoint, Rational> values_at(int m) const;

  const VertexValues& raw_values() const { return *values_; }

  PHFunction scaled_by(const Rational& c) const;

 private:
  PHFunction(Region support, int def_level, int mat_level, bool local,
             std::shared_ptr<const VertexValues> values)
      : support_(std::move(support)),
        def_level_(def_level),
        mat_level_(mat_level),
        local_(local),
        values_(std::move(values)) {}

  static PHFunction build(Region support, int def_level,
                          const std::map<LatticePoint, Rational>& values,
                          bool local);

  Region support_;
  int def_level_ = 0;
  int mat_level_ = 0;
  bool local_ = false;
  std::shared_ptr<const VertexValues> values_;
};

/// Renormalized graph energy (5/3)^(-m) * sum over level-m edges of the
/// region of the squared value differences. Monotone nondecreasing as m
/// decreases; constant for m <= definition level.
Rational graph_energy(const PHFunction& f, const Region& region, int m);

/// The stabilized (Dirichlet) energy over the region: the level-m_def graph
/// energy, re-verified one level deeper. Throws StabilizationFailureError
/// if the two disagree (that would be a bug, not a math condition).
EnergyValue dirichlet_energy(const PHFunction& f, const Region& region);

}  // namespace sierp
