#pragma once

// Finite-dimensional tracial von Neumann algebras: direct sums of full
// complex matrix blocks M_{n_1} (+) ... (+) M_{n_K} with the trace
// tau(x) = sum_k lambda_k Tr(x_k).

#include <complex>
#include <functional>
#include <limits>
#include <memory>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qha/errors.hpp"

namespace qha {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Positivity clamp, relative to the operator norm of the input.
inline constexpr double kEpsPsd = 1e-10;
/// Partial-isometry support cut, relative to the largest singular value.
inline constexpr double kEpsRank = 1e-12;

class AlgebraShape {
 public:
  AlgebraShape(std::vector<int> block_dims, std::vector<double> trace_weights);

  /// Single full matrix block M_n with weight 1.
  static std::shared_ptr<const AlgebraShape> matrix(int n, double weight = 1.0);
  /// Commutative algebra l^inf of `weights.size()` points.
  static std::shared_ptr<const AlgebraShape> diagonal(std::vector<double> weights);

  const std::vector<int>& block_dims() const { return dims_; }
  const std::vector<double>& trace_weights() const { return weights_; }
  std::size_t num_blocks() const { return dims_.size(); }
  int dim(std::size_t k) const { return dims_[k]; }
  double weight(std::size_t k) const { return weights_[k]; }
  /// sum_k n_k^2, the complex dimension of the algebra.
  std::size_t total_dimension() const;

  friend bool operator==(const AlgebraShape& a, const AlgebraShape& b) {
    return a.dims_ == b.dims_ && a.weights_ == b.weights_;
  }

 private:
  std::vector<int> dims_;
  std::vector<double> weights_;
};

using ShapePtr = std::shared_ptr<const AlgebraShape>;

class AlgebraElement {
 public:
  AlgebraElement() = default;
  AlgebraElement(ShapePtr shape, std::vector<Matrix> blocks);

  static AlgebraElement zero(ShapePtr shape);
  static AlgebraElement identity(ShapePtr shape);
  static AlgebraElement scalar(ShapePtr shape, cplx value);
  /// Matrix unit e_{ij} in block k.
  static AlgebraElement unit(ShapePtr shape, std::size_t k, int i, int j);
  /// Embedding of a single matrix into the one-block algebra M_n.
  static AlgebraElement from_matrix(const Matrix& m, double weight = 1.0);

  const ShapePtr& shape() const { return shape_; }
  std::size_t num_blocks() const { return blocks_.size(); }
  const Matrix& block(std::size_t k) const { return blocks_[k]; }
  Matrix& block(std::size_t k) { return blocks_[k]; }
  const std::vector<Matrix>& blocks() const { return blocks_; }

  AlgebraElement adjoint() const;
  bool is_hermitian(double tol = 1e-12) const;
  /// Operator norm: max singular value over blocks.
  double norm_inf() const;
  /// Unweighted Frobenius norm, used as a numerical scale.
  double frobenius() const;

  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  AlgebraElement& operator*=(cplx s);

  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(AlgebraElement a, cplx s) { return a *= s; }
  friend AlgebraElement operator*(cplx s, AlgebraElement a) { return a *= s; }
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);

 private:
  ShapePtr shape_;
  std::vector<Matrix> blocks_;
};

/// Throws StructuralError unless both elements live in the same algebra.
void require_same_shape(const AlgebraElement& a, const AlgebraElement& b);

cplx trace(const AlgebraElement& x);
/// tau(a^* b) without forming the product.
cplx trace_inner(const AlgebraElement& a, const AlgebraElement& b);

/// Noncommutative L^p norm, p in [1, inf]; p = kInfinity gives the operator norm.
double p_norm(const AlgebraElement& x, double p);

/// Eigen-decomposition of a hermitian element, block by block.
struct HermitianSpectrum {
  std::vector<Eigen::VectorXd> values;
  std::vector<Matrix> vectors;
};
HermitianSpectrum spectrum(const AlgebraElement& x);

AlgebraElement func_calc(const AlgebraElement& x, const std::function<double(double)>& f);
/// x^t for positive x. Negative powers of a singular element raise DomainError.
AlgebraElement power(const AlgebraElement& x, double t);
AlgebraElement positive_sqrt(const AlgebraElement& x);
/// |x| = (x^* x)^{1/2}.
AlgebraElement abs(const AlgebraElement& x);
double min_eigenvalue(const AlgebraElement& x);

struct Polar {
  AlgebraElement u;
  AlgebraElement absx;
};
Polar polar(const AlgebraElement& x);

/// A normal weight phi(x) = tau(K x), K >= 0.
class WeightKernel {
 public:
  explicit WeightKernel(AlgebraElement kernel);
  const AlgebraElement& kernel() const { return kernel_; }

 private:
  AlgebraElement kernel_;
};

cplx weight_apply(const WeightKernel& k, const AlgebraElement& x);
/// tau(K^{1/2} x K^{1/2}); equal to weight_apply by cyclicity.
cplx weight_apply_symmetric(const WeightKernel& k, const AlgebraElement& x);

/// Seeded complex Gaussian entries.
AlgebraElement random_element(const ShapePtr& shape, std::mt19937_64& rng);
/// z^* z + delta * 1 with delta = 1e-6 ||z^* z||.
AlgebraElement random_positive(const ShapePtr& shape, std::mt19937_64& rng);
/// Random unit vector in C^n.
Vector random_unit_vector(int n, std::mt19937_64& rng);

}  // namespace qha
