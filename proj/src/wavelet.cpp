#include "qha/wavelet.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qha {

namespace {

int dilation_index(const WaveletGrid& grid, double a) {
  if (!(a > 0.0)) throw ParameterError("dilation must be positive");
  const double k = std::log(a) / grid.log_step;
  const double r = std::round(k);
  if (std::abs(k - r) > 1e-9) throw ParameterError("dilation step incompatible with the frequency grid");
  return static_cast<int>(r);
}

std::string param_label(const Params& p) {
  std::ostringstream os;
  os.precision(6);
  os << "(" << p[0] << "," << p[1] << ")";
  return os.str();
}

// diag(d) S_k applied as x -> V x V^*, exploiting the shift structure.
AlgebraElement shifted_conjugate(const AlgebraElement& x, const cplx* d, int k, int n) {
  Matrix out = Matrix::Zero(n, n);
  const Matrix& in = x.block(0);
  const int lo = std::max(0, -k);
  const int hi = std::min(n, n - k);
  for (int l = lo; l < hi; ++l) {
    const cplx cl = std::conj(d[l]);
    for (int j = lo; j < hi; ++j) out(j, l) = d[j] * in(j + k, l + k) * cl;
  }
  return AlgebraElement(x.shape(), {std::move(out)});
}

}  // namespace

double WaveletGrid::center(int j) const { return omega0 * std::exp(log_step * j); }
double WaveletGrid::lower(int j) const { return omega0 * std::exp(log_step * (j - 0.5)); }
double WaveletGrid::upper(int j) const { return omega0 * std::exp(log_step * (j + 0.5)); }

std::size_t WaveletGrid::b_nodes() const {
  const double span = omega_max() - omega_min();
  const auto half = static_cast<std::size_t>(std::ceil(b_extent() * span * 1.1));
  return 2 * half + 1;
}

void WaveletGrid::validate() const {
  if (cells < 4) throw ParameterError("wavelet grid needs at least 4 cells");
  if (!(log_step > 0.0) || !(omega0 > 0.0)) throw ParameterError("wavelet grid needs positive log step and base frequency");
  if (level < 1) throw ParameterError("refinement level must be >= 1");
}

std::shared_ptr<const QuadratureGroup> wavelet_group(const WaveletGrid& grid) {
  grid.validate();
  const double amax = std::exp(grid.log_step * (grid.cells - 1));
  auto q = affine_group(1.0 / amax, amax, static_cast<std::size_t>(2 * grid.cells - 1), -grid.b_extent(),
                        grid.b_extent(), grid.b_nodes());
  q.label = "affine";
  return std::make_shared<const QuadratureGroup>(std::move(q));
}

Matrix wavelet_rep(const WaveletGrid& grid, const Params& p) {
  const int k = dilation_index(grid, p.at(0));
  const int n = grid.cells;
  Matrix u = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j)
    if (j + k >= 0 && j + k < n) u(j, j + k) = std::polar(1.0, -2.0 * std::numbers::pi * p.at(1) * grid.center(j));
  return u;
}

cplx cell_phase(const WaveletGrid& grid, int j, double b) {
  const double x = std::numbers::pi * b * grid.width(j);
  const double sinc = x == 0.0 ? 1.0 : std::sin(x) / x;
  return std::polar(sinc, -2.0 * std::numbers::pi * b * grid.midpoint(j));
}

Matrix compressed_rep(const WaveletGrid& grid, const Params& p) {
  const int k = dilation_index(grid, p.at(0));
  const int n = grid.cells;
  Matrix v = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j)
    if (j + k >= 0 && j + k < n) v(j, j + k) = cell_phase(grid, j, p.at(1));
  return v;
}

AlgebraElement inverse_frequency_multiplier(const WaveletGrid& grid) {
  auto shape = AlgebraShape::matrix(grid.cells);
  AlgebraElement d = AlgebraElement::zero(shape);
  for (int j = 0; j < grid.cells; ++j) d.block(0)(j, j) = grid.log_step / grid.width(j);
  return d;
}

std::vector<std::size_t> dilation_nodes(const WaveletGrid& grid) {
  const std::size_t nb = grid.b_nodes();
  std::vector<std::size_t> out;
  for (std::size_t ia = 0; ia < static_cast<std::size_t>(2 * grid.cells - 1); ++ia) out.push_back(ia * nb + nb / 2);
  return out;
}

Action affine_wavelet_action(const WaveletGrid& grid) {
  auto q = wavelet_group(grid);
  auto model = std::make_shared<const GroupModel>(GroupModel::quadrature(q));
  const int n = grid.cells;
  const std::size_t nb = q->n_b;

  auto phases = std::make_shared<std::vector<cplx>>(nb * static_cast<std::size_t>(n));
  for (std::size_t ib = 0; ib < nb; ++ib)
    for (int j = 0; j < n; ++j) (*phases)[ib * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)] = cell_phase(grid, j, q->nodes[ib][1]);

  Action action("affine-wavelet", model, AlgebraShape::matrix(n),
                [phases, nb, n](std::size_t node, const AlgebraElement& x) {
                  const int k = static_cast<int>(node / nb) - (n - 1);
                  return shifted_conjugate(x, phases->data() + (node % nb) * static_cast<std::size_t>(n), k, n);
                });

  StructuralProbe p;
  p.shape = action.shape();
  p.sampled = true;
  p.window = std::make_pair(2, n - 2);
  std::vector<Params> base;
  for (int k : {-1, 0, 1})
    for (double b : {0.0, 0.0137, -0.29}) base.push_back({std::exp(grid.log_step * k), b});
  std::vector<Params> all = base;
  auto add = [&](const Params& x) {
    for (std::size_t i = 0; i < all.size(); ++i)
      if (std::abs(all[i][0] - x[0]) < 1e-12 && std::abs(all[i][1] - x[1]) < 1e-12) return i;
    all.push_back(x);
    return all.size() - 1;
  };
  for (std::size_t i = 0; i < base.size(); ++i)
    for (std::size_t j = 0; j < base.size(); ++j) {
      const std::size_t ij = add(q->compose(base[i], base[j]));
      p.compositions.push_back({i, j, ij});
    }
  for (const auto& prm : all) {
    auto u = std::make_shared<const Matrix>(wavelet_rep(grid, prm));
    p.generators.push_back({param_label(prm), [u](const AlgebraElement& x) {
                              return AlgebraElement(x.shape(), {(*u) * x.block(0) * u->adjoint()});
                            }});
  }
  p.commutant_generators = {wavelet_rep(grid, {1.0, 0.0137}), wavelet_rep(grid, {std::exp(grid.log_step), 0.0})};
  action.set_probe(std::move(p));
  return action;
}

}  // namespace qha
