#pragma once

// Group actions g.x on finite tracial algebras and the structural
// certificates attached to them (homomorphism, trace preservation,
// ergodicity).

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qha/algebra.hpp"
#include "qha/groups.hpp"
#include "qha/report.hpp"

namespace qha {

using Transform = std::function<AlgebraElement(const AlgebraElement&)>;

struct ProbeGenerator {
  std::string label;
  Transform transform;
};

/// The finite set of group elements on which structural properties are
/// certified. For finite groups this is the whole group; for quadrature
/// groups a declared sample.
struct StructuralProbe {
  ShapePtr shape;
  std::vector<ProbeGenerator> generators;
  /// Index triples (g, h, gh) into `generators`.
  std::vector<std::array<std::size_t, 3>> compositions;
  /// Test elements are compressed to indices [first, second) of the single
  /// block, away from truncation edges.
  std::optional<std::pair<int, int>> window;
  bool sampled = false;
  /// When non-empty (single-block algebras), ergodicity is read off the
  /// commutant {x : Ux = xU for all listed U} instead of the fixed points.
  std::vector<Matrix> commutant_generators;
};

class Action {
 public:
  using NodeApply = std::function<AlgebraElement(std::size_t, const AlgebraElement&)>;

  Action(std::string kind, std::shared_ptr<const GroupModel> group, ShapePtr shape, NodeApply apply);

  const std::string& kind() const { return kind_; }
  const GroupModel& group() const { return *group_; }
  const std::shared_ptr<const GroupModel>& group_ptr() const { return group_; }
  const ShapePtr& shape() const { return shape_; }

  AlgebraElement apply(std::size_t node, const AlgebraElement& x) const;

  /// For finite groups built at construction from the multiplication table;
  /// quadrature actions must set one.
  const StructuralProbe& probe() const;
  void set_probe(StructuralProbe p);

 private:
  std::string kind_;
  std::shared_ptr<const GroupModel> group_;
  ShapePtr shape_;
  NodeApply apply_;
  std::shared_ptr<const StructuralProbe> probe_;
};

/// Projective unitary representation of a finite group on C^d.
struct UnitaryRep {
  std::shared_ptr<const FiniteGroup> group;
  std::vector<Matrix> u;
  /// sigma[g * N + h] with U_g U_h = sigma(g,h) U_gh. Empty means "derive".
  std::vector<cplx> cocycle;

  int dim() const { return static_cast<int>(u.front().rows()); }
  /// Unitarity, multiplication law and cocycle identity; throws StructuralError.
  void validate(double tol = 1e-11) const;
  /// sigma(g,h) read off the matrices.
  std::vector<cplx> derived_cocycle() const;
};

void validate_cocycle(const FiniteGroup& g, const std::vector<cplx>& sigma, double tol = 1e-12);

Action conjugation_action(const UnitaryRep& rep, HaarNormalization haar, std::string kind = "conjugation");

/// Irreducible representations by name: s3 with std|sign|trivial, cyclic(n) with an integer k.
UnitaryRep irrep(const std::string& group, const std::string& rep);
std::vector<std::string> irrep_names(const std::string& group);

/// pi(k,l) = M_l T_k on C^n, element index k*n + l of cyclic(n) x cyclic(n).
UnitaryRep finite_weyl_heisenberg(int n);

/// G acting on points {0..T-1}; `point_map[g * T + t]` = g.t.
/// (g.x)(t) = x(g^{-1} t) on the diagonal algebra with trace weights `measure`.
Action permutation_action(std::shared_ptr<const FiniteGroup> g, HaarNormalization haar,
                          std::vector<std::size_t> point_map, std::vector<double> measure,
                          bool validate_measure = true);
Action translation_action(std::shared_ptr<const FiniteGroup> g, HaarNormalization haar);
/// G acting on G/H; `measure` defaults to counting measure.
Action coset_action(std::shared_ptr<const FiniteGroup> g, const Subgroup& h, HaarNormalization haar,
                    std::optional<std::vector<double>> measure = std::nullopt,
                    bool validate_measure = true);

/// Action of G on Ind_H^G(N), stored as the direct sum over coset representatives.
Action induced_action(std::shared_ptr<const FiniteGroup> g, const Subgroup& h, const Action& inner,
                      HaarNormalization haar);

/// Dimension of the joint fixed-point space (or commutant) of the probe generators.
std::size_t fixed_point_dimension(const StructuralProbe& probe, double threshold = 1e-8);
std::size_t fixed_point_dimension(const Action& action, double threshold = 1e-8);

/// Structural certificates, evaluated on the action's probe.
CheckReport is_trace_preserving(const Action& action, Tolerance tol = {1e-10, 1e-12});
CheckReport check_homomorphism(const Action& action, std::mt19937_64& rng, Tolerance tol = {1e-10, 1e-12});
/// Multiplicativity, *-preservation and (outside window mode) unitality.
CheckReport check_automorphism(const Action& action, std::mt19937_64& rng, Tolerance tol = {1e-10, 1e-12});
/// |‖g.x‖_p - ‖x‖_p| for p in {1, 2, 3, inf}.
CheckReport check_lp_isometry(const Action& action, std::mt19937_64& rng, Tolerance tol = {1e-9, 1e-12});
CheckReport check_ergodic(const Action& action);

/// Basis of matrix units, restricted to the probe window when one is set.
std::vector<AlgebraElement> structure_basis(const StructuralProbe& probe);
/// P x P with P the window projection.
AlgebraElement compress_to_window(const StructuralProbe& probe, const AlgebraElement& x);

}  // namespace qha
