#include "qha/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qha {

AlgebraShape::AlgebraShape(std::vector<int> block_dims, std::vector<double> trace_weights)
    : dims_(std::move(block_dims)), weights_(std::move(trace_weights)) {
  if (dims_.empty()) throw StructuralError("algebra shape needs at least one block");
  if (dims_.size() != weights_.size())
    throw StructuralError("block_dims and trace_weights differ in length");
  for (int n : dims_)
    if (n < 1) throw StructuralError("block dimension must be >= 1");
  for (double w : weights_)
    if (!(w > 0.0) || !std::isfinite(w)) throw StructuralError("trace weight must be positive");
}

std::shared_ptr<const AlgebraShape> AlgebraShape::matrix(int n, double weight) {
  return std::make_shared<const AlgebraShape>(std::vector<int>{n}, std::vector<double>{weight});
}

std::shared_ptr<const AlgebraShape> AlgebraShape::diagonal(std::vector<double> weights) {
  std::vector<int> dims(weights.size(), 1);
  return std::make_shared<const AlgebraShape>(std::move(dims), std::move(weights));
}

std::size_t AlgebraShape::total_dimension() const {
  std::size_t d = 0;
  for (int n : dims_) d += static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  return d;
}

AlgebraElement::AlgebraElement(ShapePtr shape, std::vector<Matrix> blocks)
    : shape_(std::move(shape)), blocks_(std::move(blocks)) {
  if (!shape_) throw StructuralError("element without shape");
  if (blocks_.size() != shape_->num_blocks())
    throw StructuralError("block count does not match shape");
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    const int n = shape_->dim(k);
    if (blocks_[k].rows() != n || blocks_[k].cols() != n) {
      std::ostringstream os;
      os << "block " << k << " has size " << blocks_[k].rows() << "x" << blocks_[k].cols()
         << ", expected " << n << "x" << n;
      throw StructuralError(os.str());
    }
  }
}

AlgebraElement AlgebraElement::zero(ShapePtr shape) {
  std::vector<Matrix> blocks;
  blocks.reserve(shape->num_blocks());
  for (int n : shape->block_dims()) blocks.push_back(Matrix::Zero(n, n));
  return AlgebraElement(std::move(shape), std::move(blocks));
}

AlgebraElement AlgebraElement::identity(ShapePtr shape) { return scalar(std::move(shape), 1.0); }

AlgebraElement AlgebraElement::scalar(ShapePtr shape, cplx value) {
  std::vector<Matrix> blocks;
  blocks.reserve(shape->num_blocks());
  for (int n : shape->block_dims()) blocks.push_back(value * Matrix::Identity(n, n));
  return AlgebraElement(std::move(shape), std::move(blocks));
}

AlgebraElement AlgebraElement::unit(ShapePtr shape, std::size_t k, int i, int j) {
  auto e = zero(std::move(shape));
  e.blocks_.at(k)(i, j) = 1.0;
  return e;
}

AlgebraElement AlgebraElement::from_matrix(const Matrix& m, double weight) {
  if (m.rows() != m.cols()) throw StructuralError("matrix must be square");
  return AlgebraElement(AlgebraShape::matrix(static_cast<int>(m.rows()), weight), {m});
}

void require_same_shape(const AlgebraElement& a, const AlgebraElement& b) {
  if (!a.shape() || !b.shape()) throw StructuralError("element without shape");
  if (a.shape() != b.shape() && !(*a.shape() == *b.shape()))
    throw StructuralError("elements belong to different algebras");
}

AlgebraElement AlgebraElement::adjoint() const {
  std::vector<Matrix> out;
  out.reserve(blocks_.size());
  for (const auto& b : blocks_) out.push_back(b.adjoint());
  return AlgebraElement(shape_, std::move(out));
}

bool AlgebraElement::is_hermitian(double tol) const {
  const double scale = std::max(1.0, norm_inf());
  for (const auto& b : blocks_)
    if ((b - b.adjoint()).cwiseAbs().maxCoeff() > tol * scale) return false;
  return true;
}

double AlgebraElement::norm_inf() const {
  double m = 0.0;
  for (const auto& b : blocks_) {
    if (b.size() == 1) {
      m = std::max(m, std::abs(b(0, 0)));
      continue;
    }
    Eigen::JacobiSVD<Matrix> svd(b);
    m = std::max(m, svd.singularValues()(0));
  }
  return m;
}

double AlgebraElement::frobenius() const {
  double s = 0.0;
  for (const auto& b : blocks_) s += b.squaredNorm();
  return std::sqrt(s);
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  require_same_shape(*this, o);
  for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] += o.blocks_[k];
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  require_same_shape(*this, o);
  for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] -= o.blocks_[k];
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(cplx s) {
  for (auto& b : blocks_) b *= s;
  return *this;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_shape(a, b);
  std::vector<Matrix> out;
  out.reserve(a.num_blocks());
  for (std::size_t k = 0; k < a.num_blocks(); ++k) out.push_back(a.block(k) * b.block(k));
  return AlgebraElement(a.shape(), std::move(out));
}

cplx trace(const AlgebraElement& x) {
  cplx t = 0.0;
  for (std::size_t k = 0; k < x.num_blocks(); ++k) t += x.shape()->weight(k) * x.block(k).trace();
  return t;
}

cplx trace_inner(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_shape(a, b);
  cplx t = 0.0;
  for (std::size_t k = 0; k < a.num_blocks(); ++k)
    t += a.shape()->weight(k) * (a.block(k).conjugate().cwiseProduct(b.block(k))).sum();
  return t;
}

double p_norm(const AlgebraElement& x, double p) {
  if (!(p >= 1.0)) throw ParameterError("p-norm requires p >= 1");
  if (std::isinf(p)) return x.norm_inf();
  double s = 0.0;
  for (std::size_t k = 0; k < x.num_blocks(); ++k) {
    const auto& b = x.block(k);
    double bs = 0.0;
    if (b.size() == 1) {
      bs = std::pow(std::abs(b(0, 0)), p);
    } else {
      Eigen::JacobiSVD<Matrix> svd(b);
      for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
        bs += std::pow(svd.singularValues()(i), p);
    }
    s += x.shape()->weight(k) * bs;
  }
  return std::pow(s, 1.0 / p);
}

HermitianSpectrum spectrum(const AlgebraElement& x) {
  HermitianSpectrum sp;
  sp.values.reserve(x.num_blocks());
  sp.vectors.reserve(x.num_blocks());
  for (const auto& b : x.blocks()) {
    // Symmetrize so that round-off in the input does not leak into the basis.
    const Matrix h = 0.5 * (b + b.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    sp.values.push_back(es.eigenvalues());
    sp.vectors.push_back(es.eigenvectors());
  }
  return sp;
}

namespace {

AlgebraElement rebuild(const ShapePtr& shape, const HermitianSpectrum& sp,
                       const std::function<double(double)>& f) {
  std::vector<Matrix> out;
  out.reserve(sp.values.size());
  for (std::size_t k = 0; k < sp.values.size(); ++k) {
    const auto& v = sp.vectors[k];
    Eigen::VectorXd fv(sp.values[k].size());
    for (Eigen::Index i = 0; i < fv.size(); ++i) {
      fv(i) = f(sp.values[k](i));
      if (!std::isfinite(fv(i))) throw DomainError("function undefined on an eigenvalue");
    }
    out.push_back(v * fv.cast<cplx>().asDiagonal() * v.adjoint());
  }
  return AlgebraElement(shape, std::move(out));
}

void require_hermitian(const AlgebraElement& x, const char* what) {
  if (!x.is_hermitian(1e-9)) throw DomainError(std::string(what) + " requires a hermitian element");
}

}  // namespace

AlgebraElement func_calc(const AlgebraElement& x, const std::function<double(double)>& f) {
  require_hermitian(x, "func_calc");
  return rebuild(x.shape(), spectrum(x), f);
}

AlgebraElement power(const AlgebraElement& x, double t) {
  require_hermitian(x, "power");
  const auto sp = spectrum(x);
  const double tol = kEpsPsd * std::max(1.0, x.norm_inf());
  for (const auto& v : sp.values)
    if (v.size() && v.minCoeff() < -tol) throw NotPositiveError("power of a non-positive element");
  return rebuild(x.shape(), sp, [t, tol](double ev) {
    if (ev <= tol) {
      if (t < 0.0) return std::numeric_limits<double>::quiet_NaN();
      if (t == 0.0) return 1.0;
      return 0.0;
    }
    return std::pow(ev, t);
  });
}

AlgebraElement positive_sqrt(const AlgebraElement& x) {
  require_hermitian(x, "positive_sqrt");
  const auto sp = spectrum(x);
  const double tol = kEpsPsd * std::max(1.0, x.norm_inf());
  for (const auto& v : sp.values)
    if (v.size() && v.minCoeff() < -tol)
      throw NotPositiveError("eigenvalue below -eps_psd in positive_sqrt");
  return rebuild(x.shape(), sp, [](double ev) { return ev > 0.0 ? std::sqrt(ev) : 0.0; });
}

AlgebraElement abs(const AlgebraElement& x) { return positive_sqrt(x.adjoint() * x); }

double min_eigenvalue(const AlgebraElement& x) {
  const auto sp = spectrum(x);
  double m = kInfinity;
  for (const auto& v : sp.values) m = std::min(m, v.minCoeff());
  return m;
}

Polar polar(const AlgebraElement& x) {
  std::vector<Matrix> us;
  std::vector<Matrix> abss;
  for (const auto& b : x.blocks()) {
    Eigen::JacobiSVD<Matrix> svd(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double cut = kEpsRank * (s.size() ? s(0) : 0.0);
    const Eigen::Index n = b.rows();
    Matrix u = Matrix::Zero(n, n);
    Matrix a = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < s.size(); ++i) {
      a += s(i) * svd.matrixV().col(i) * svd.matrixV().col(i).adjoint();
      if (s(i) > cut && s(i) > 0.0) u += svd.matrixU().col(i) * svd.matrixV().col(i).adjoint();
    }
    us.push_back(std::move(u));
    abss.push_back(std::move(a));
  }
  return {AlgebraElement(x.shape(), std::move(us)), AlgebraElement(x.shape(), std::move(abss))};
}

WeightKernel::WeightKernel(AlgebraElement kernel) : kernel_(std::move(kernel)) {
  if (!kernel_.is_hermitian(1e-9)) throw NotPositiveError("weight kernel must be hermitian");
  const double tol = kEpsPsd * std::max(1.0, kernel_.norm_inf());
  if (min_eigenvalue(kernel_) < -tol) throw NotPositiveError("weight kernel must be positive");
}

cplx weight_apply(const WeightKernel& k, const AlgebraElement& x) {
  return trace(k.kernel() * x);
}

cplx weight_apply_symmetric(const WeightKernel& k, const AlgebraElement& x) {
  const auto s = positive_sqrt(k.kernel());
  return trace(s * x * s);
}

AlgebraElement random_element(const ShapePtr& shape, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Matrix> blocks;
  for (int n : shape->block_dims()) {
    Matrix m(n, n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const double re = g(rng);
        const double im = g(rng);
        m(i, j) = cplx(re, im);
      }
    blocks.push_back(std::move(m));
  }
  return AlgebraElement(shape, std::move(blocks));
}

AlgebraElement random_positive(const ShapePtr& shape, std::mt19937_64& rng) {
  const auto z = random_element(shape, rng);
  auto p = z.adjoint() * z;
  const double delta = 1e-6 * p.norm_inf();
  p += AlgebraElement::scalar(shape, delta);
  std::vector<Matrix> h;
  for (const auto& b : p.blocks()) h.push_back(0.5 * (b + b.adjoint()));
  return AlgebraElement(shape, std::move(h));
}

Vector random_unit_vector(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vector v(n);
  for (int i = 0; i < n; ++i) {
    const double re = g(rng);
    const double im = g(rng);
    v(i) = cplx(re, im);
  }
  return v / v.norm();
}

}  // namespace qha
