#pragma once

// Group models with Haar integration: exact finite groups given by their
// multiplication table, and quadrature-discretized locally compact groups.

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qha/errors.hpp"

namespace qha {

using cplx = std::complex<double>;

class FiniteGroup {
 public:
  /// `table[a * N + b]` is the index of a*b. Validates the Latin-square
  /// property, associativity (exhaustive for N <= 24, sampled above) and
  /// locates the identity and inverses.
  FiniteGroup(std::string name, std::vector<std::size_t> table, std::vector<std::string> labels,
              std::vector<int> cyclic_factors = {});

  std::size_t size() const { return n_; }
  std::size_t mul(std::size_t a, std::size_t b) const { return table_[a * n_ + b]; }
  std::size_t inv(std::size_t a) const { return inverse_[a]; }
  std::size_t identity() const { return identity_; }
  const std::string& name() const { return name_; }
  const std::string& label(std::size_t a) const { return labels_[a]; }
  bool is_abelian() const;
  std::size_t order_of(std::size_t a) const;
  /// Non-empty when the group was built as a product of cyclic groups; element
  /// index is then the mixed-radix number of its coordinates.
  const std::vector<int>& cyclic_factors() const { return factors_; }
  std::vector<int> coordinates(std::size_t a) const;

 private:
  std::string name_;
  std::size_t n_;
  std::vector<std::size_t> table_;
  std::vector<std::string> labels_;
  std::vector<std::size_t> inverse_;
  std::size_t identity_ = 0;
  std::vector<int> factors_;
};

FiniteGroup cyclic(int n);
FiniteGroup product(const FiniteGroup& g, const FiniteGroup& h);
/// Symmetric group on three letters; elements are permutations in one-line notation.
FiniteGroup symmetric3();
/// Parses "cyclic(n)", "s3" and products "AxB" (e.g. "cyclic(2)xcyclic(4)").
FiniteGroup parse_group(const std::string& name);
std::vector<std::string> group_name_forms();

/// A subgroup H <= G together with its abstract group structure.
struct Subgroup {
  FiniteGroup group;
  std::vector<std::size_t> embedding;  // abstract index -> index in G
};

/// Validates closure of `elements` in G and builds the abstract subgroup.
Subgroup make_subgroup(const FiniteGroup& g, std::vector<std::size_t> elements, std::string name);
/// Canonical embedding by name: cyclic(m) in cyclic(n) as multiples of n/m,
/// componentwise for products, and cyclic(3)/cyclic(2) in s3.
Subgroup subgroup_by_name(const FiniteGroup& g, const std::string& h_name);

/// Left coset representatives g_n of H in G (g_1 = e), in increasing index order.
std::vector<std::size_t> coset_representatives(const FiniteGroup& g, const Subgroup& h);
/// For each element of G, the position of its coset in `reps`.
std::vector<std::size_t> coset_index(const FiniteGroup& g, const Subgroup& h,
                                     const std::vector<std::size_t>& reps);

/// Characters of a finite abelian group built from cyclic factors.
struct CharacterTable {
  std::size_t order = 0;
  std::vector<std::vector<cplx>> values;  // values[character][element]

  cplx operator()(std::size_t chi, std::size_t g) const { return values[chi][g]; }
};

/// Character (u_1..u_r) evaluated at (g_1..g_r): prod_i exp(2 pi i u_i g_i / n_i).
/// Characters are indexed like the elements of G (same mixed radix).
CharacterTable dual_group(const FiniteGroup& g);
/// The Pontryagin dual as a finite group (isomorphic to G, characters multiply pointwise).
FiniteGroup dual_as_group(const FiniteGroup& g);

using Params = std::vector<double>;

struct QuadratureGroup {
  std::string label;
  std::vector<Params> nodes;
  std::vector<double> haar_weights;
  std::function<Params(const Params&, const Params&)> compose;
  std::function<Params(const Params&)> inverse;
  Params identity;
  std::function<double(const Params&)> modular;
  /// Log step of the dilation grid and step of the translation grid.
  double log_step = 0.0;
  double b_step = 0.0;
  std::size_t n_a = 0;
  std::size_t n_b = 0;

  std::size_t size() const { return nodes.size(); }
};

/// ax+b group on a log-uniform (a) x uniform (b) grid with left Haar
/// weights da db / a^2 and modular function 1/a. Node index is ia * n_b + ib.
QuadratureGroup affine_group(double a_min, double a_max, std::size_t n_a, double b_min,
                             double b_max, std::size_t n_b);

enum class HaarNormalization { counting, probability, quadrature };
std::string to_string(HaarNormalization h);
HaarNormalization parse_haar(const std::string& s);

/// Unified view used by actions and integrals: nodes with Haar weights and
/// modular function values.
class GroupModel {
 public:
  static GroupModel finite(std::shared_ptr<const FiniteGroup> g, HaarNormalization h);
  static GroupModel quadrature(std::shared_ptr<const QuadratureGroup> q);

  std::size_t size() const { return weights_.size(); }
  double weight(std::size_t i) const { return weights_[i]; }
  double modular(std::size_t i) const { return modular_[i]; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<double>& modular_values() const { return modular_; }
  bool is_finite() const { return static_cast<bool>(finite_); }
  bool is_unimodular(double tol = 1e-12) const;
  const FiniteGroup& finite_group() const;
  const QuadratureGroup& quadrature_group() const;
  const std::shared_ptr<const FiniteGroup>& finite_ptr() const { return finite_; }
  HaarNormalization normalization() const { return norm_; }
  std::string node_label(std::size_t i) const;
  std::string label() const;

 private:
  std::shared_ptr<const FiniteGroup> finite_;
  std::shared_ptr<const QuadratureGroup> quad_;
  HaarNormalization norm_ = HaarNormalization::counting;
  std::vector<double> weights_;
  std::vector<double> modular_;
};

/// sum_i w_i f(node_i), accumulated in node order.
cplx integrate(const GroupModel& g, std::span<const cplx> values);
cplx integrate(const GroupModel& g, const std::function<cplx(std::size_t)>& f);

}  // namespace qha
