#include "qha/actions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qha {

namespace {

constexpr std::size_t kExhaustiveOrder = 16;
constexpr std::size_t kSampledPairs = 256;

StructuralProbe finite_probe(const GroupModel& g, const ShapePtr& shape, const Action::NodeApply& apply) {
  const FiniteGroup& grp = g.finite_group();
  StructuralProbe p;
  p.shape = shape;
  const std::size_t n = grp.size();
  for (std::size_t i = 0; i < n; ++i) {
    p.generators.push_back({grp.label(i), [apply, i](const AlgebraElement& x) { return apply(i, x); }});
  }
  if (n <= kExhaustiveOrder) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) p.compositions.push_back({a, b, grp.mul(a, b)});
  } else {
    p.sampled = true;
    std::mt19937_64 rng(0xc0ffee);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t t = 0; t < kSampledPairs; ++t) {
      const std::size_t a = pick(rng);
      const std::size_t b = pick(rng);
      p.compositions.push_back({a, b, grp.mul(a, b)});
    }
  }
  return p;
}

AlgebraElement conjugate(const Matrix& u, const AlgebraElement& x) {
  return AlgebraElement(x.shape(), {u * x.block(0) * u.adjoint()});
}

Matrix shift_matrix(int n, int k) {
  Matrix t = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) t(((i + k) % n + n) % n, i) = 1.0;
  return t;
}

Matrix modulation_matrix(int n, int l) {
  Matrix m = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j)
    m(j, j) = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>((l * j) % n) / n);
  return m;
}

Eigen::VectorXcd vectorize(const AlgebraElement& x) {
  std::size_t total = 0;
  for (const auto& b : x.blocks()) total += static_cast<std::size_t>(b.size());
  Eigen::VectorXcd v(static_cast<Eigen::Index>(total));
  Eigen::Index off = 0;
  for (const auto& b : x.blocks()) {
    v.segment(off, b.size()) = b.reshaped();
    off += b.size();
  }
  return v;
}

std::vector<AlgebraElement> probe_samples(const StructuralProbe& p, std::mt19937_64& rng, int count) {
  std::vector<AlgebraElement> xs;
  for (int i = 0; i < count; ++i) xs.push_back(compress_to_window(p, random_element(p.shape, rng)));
  return xs;
}

double max_abs_diff(const AlgebraElement& a, const AlgebraElement& b) { return (a - b).norm_inf(); }

}  // namespace

Action::Action(std::string kind, std::shared_ptr<const GroupModel> group, ShapePtr shape, NodeApply apply)
    : kind_(std::move(kind)), group_(std::move(group)), shape_(std::move(shape)), apply_(std::move(apply)) {
  if (!group_ || !shape_ || !apply_) throw StructuralError("action requires group, algebra and apply map");
  if (group_->is_finite())
    probe_ = std::make_shared<const StructuralProbe>(finite_probe(*group_, shape_, apply_));
}

AlgebraElement Action::apply(std::size_t node, const AlgebraElement& x) const {
  if (node >= group_->size()) throw StructuralError("group node index out of range");
  if (!x.shape() || !(*x.shape() == *shape_)) throw StructuralError("element does not belong to the action's algebra");
  return apply_(node, x);
}

const StructuralProbe& Action::probe() const {
  if (!probe_) throw UnsupportedError("action '" + kind_ + "' has no structural probe");
  return *probe_;
}

void Action::set_probe(StructuralProbe p) { probe_ = std::make_shared<const StructuralProbe>(std::move(p)); }

std::vector<cplx> UnitaryRep::derived_cocycle() const {
  const std::size_t n = group->size();
  std::vector<cplx> s(n * n);
  const double d = dim();
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h)
      s[g * n + h] = (u[group->mul(g, h)].adjoint() * u[g] * u[h]).trace() / d;
  return s;
}

void validate_cocycle(const FiniteGroup& g, const std::vector<cplx>& sigma, double tol) {
  const std::size_t n = g.size();
  if (sigma.size() != n * n) throw StructuralError("cocycle table has wrong size");
  for (auto v : sigma)
    if (std::abs(std::abs(v) - 1.0) > tol) throw StructuralError("cocycle values must be unimodular");
  if (std::abs(sigma[g.identity() * n + g.identity()] - 1.0) > tol)
    throw StructuralError("cocycle must satisfy sigma(e,e) = 1");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        const cplx lhs = sigma[a * n + b] * sigma[g.mul(a, b) * n + c];
        const cplx rhs = sigma[a * n + g.mul(b, c)] * sigma[b * n + c];
        if (std::abs(lhs - rhs) > tol) throw StructuralError("cocycle identity violated");
      }
}

void UnitaryRep::validate(double tol) const {
  if (!group) throw StructuralError("representation has no group");
  const std::size_t n = group->size();
  if (u.size() != n) throw StructuralError("representation needs one matrix per group element");
  const int d = dim();
  for (const auto& m : u) {
    if (m.rows() != d || m.cols() != d) throw StructuralError("representation matrices differ in size");
    if ((m.adjoint() * m - Matrix::Identity(d, d)).norm() > tol * d)
      throw StructuralError("representation matrix is not unitary");
  }
  const auto sigma = cocycle.empty() ? derived_cocycle() : cocycle;
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h)
      if ((u[g] * u[h] - sigma[g * n + h] * u[group->mul(g, h)]).norm() > tol * d)
        throw StructuralError("U_g U_h differs from sigma(g,h) U_gh");
  validate_cocycle(*group, sigma, std::max(tol, 1e-12));
}

Action conjugation_action(const UnitaryRep& rep, HaarNormalization haar, std::string kind) {
  rep.validate();
  auto model = std::make_shared<const GroupModel>(GroupModel::finite(rep.group, haar));
  auto u = std::make_shared<const std::vector<Matrix>>(rep.u);
  return Action(std::move(kind), model, AlgebraShape::matrix(rep.dim()),
                [u](std::size_t g, const AlgebraElement& x) { return conjugate((*u)[g], x); });
}

std::vector<std::string> irrep_names(const std::string& group) {
  if (group == "s3") return {"std", "sign", "trivial"};
  const FiniteGroup g = parse_group(group);
  if (g.cyclic_factors().size() != 1)
    throw ConfigError("irreps are available for s3 and cyclic(n), not " + group);
  std::vector<std::string> out;
  for (int k = 0; k < g.cyclic_factors()[0]; ++k) out.push_back(std::to_string(k));
  return out;
}

UnitaryRep irrep(const std::string& group, const std::string& rep) {
  UnitaryRep r;
  if (group == "s3") {
    auto g = std::make_shared<const FiniteGroup>(symmetric3());
    r.group = g;
    for (std::size_t a = 0; a < g->size(); ++a) {
      const std::string& lab = g->label(a);  // one-line notation p(0)p(1)p(2)
      Matrix p = Matrix::Zero(3, 3);
      for (int i = 0; i < 3; ++i) p(lab[i] - '0', i) = 1.0;
      if (rep == "trivial") {
        r.u.push_back(Matrix::Identity(1, 1));
      } else if (rep == "sign") {
        r.u.push_back(Matrix::Constant(1, 1, p.determinant()));
      } else if (rep == "std") {
        Matrix b(3, 2);
        b << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(6.0), -1.0 / std::sqrt(2.0), 1.0 / std::sqrt(6.0), 0.0,
            -2.0 / std::sqrt(6.0);
        r.u.push_back(b.adjoint() * p * b);
      } else {
        throw ConfigError("unknown s3 irrep '" + rep + "'; valid: std sign trivial");
      }
    }
    return r;
  }
  auto g = std::make_shared<const FiniteGroup>(parse_group(group));
  if (g->cyclic_factors().size() != 1) throw ConfigError("irreps are available for s3 and cyclic(n), not " + group);
  int k = 0;
  try {
    std::size_t used = 0;
    k = std::stoi(rep, &used);
    if (used != rep.size()) throw std::invalid_argument(rep);
  } catch (const std::exception&) {
    throw ConfigError("cyclic irrep label must be an integer, got '" + rep + "'");
  }
  const int n = g->cyclic_factors()[0];
  r.group = g;
  for (int a = 0; a < n; ++a)
    r.u.push_back(Matrix::Constant(1, 1, std::polar(1.0, 2.0 * std::numbers::pi * (((k * a) % n + n) % n) / n)));
  return r;
}

UnitaryRep finite_weyl_heisenberg(int n) {
  if (n < 2) throw ParameterError("finite Weyl-Heisenberg needs n >= 2");
  UnitaryRep r;
  r.group = std::make_shared<const FiniteGroup>(product(cyclic(n), cyclic(n)));
  const auto N = static_cast<std::size_t>(n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) r.u.push_back(modulation_matrix(n, l) * shift_matrix(n, k));
  r.cocycle.resize(N * N * N * N);
  for (std::size_t g = 0; g < N * N; ++g)
    for (std::size_t h = 0; h < N * N; ++h) {
      const auto k = static_cast<long>(g / N);
      const auto lp = static_cast<long>(h % N);
      r.cocycle[g * N * N + h] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>((k * lp) % n) / n);
    }
  return r;
}

Action permutation_action(std::shared_ptr<const FiniteGroup> g, HaarNormalization haar,
                          std::vector<std::size_t> point_map, std::vector<double> measure, bool validate_measure) {
  const std::size_t n = g->size();
  const std::size_t t = measure.size();
  if (t == 0) throw StructuralError("permutation action needs at least one point");
  if (point_map.size() != n * t) throw StructuralError("point map has wrong size");
  for (auto v : point_map)
    if (v >= t) throw StructuralError("point map entry out of range");
  for (std::size_t p = 0; p < t; ++p)
    if (point_map[g->identity() * t + p] != p) throw StructuralError("identity must fix every point");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t p = 0; p < t; ++p)
        if (point_map[a * t + point_map[b * t + p]] != point_map[g->mul(a, b) * t + p])
          throw StructuralError("point map is not a group action");
  if (validate_measure) {
    const double scale = *std::max_element(measure.begin(), measure.end());
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t p = 0; p < t; ++p)
        if (std::abs(measure[point_map[a * t + p]] - measure[p]) > 1e-12 * scale)
          throw StructuralError("measure is not invariant under the group action");
  }
  auto model = std::make_shared<const GroupModel>(GroupModel::finite(g, haar));
  auto shape = AlgebraShape::diagonal(std::move(measure));
  auto map = std::make_shared<const std::vector<std::size_t>>(std::move(point_map));
  return Action("permutation", model, shape, [g, map, t](std::size_t a, const AlgebraElement& x) {
    const std::size_t ainv = g->inv(a);
    std::vector<Matrix> blocks(t);
    for (std::size_t p = 0; p < t; ++p) blocks[p] = x.block((*map)[ainv * t + p]);
    return AlgebraElement(x.shape(), std::move(blocks));
  });
}

Action translation_action(std::shared_ptr<const FiniteGroup> g, HaarNormalization haar) {
  const std::size_t n = g->size();
  std::vector<std::size_t> map(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) map[a * n + b] = g->mul(a, b);
  Action a = permutation_action(g, haar, std::move(map), std::vector<double>(n, 1.0));
  return Action("translation", a.group_ptr(), a.shape(),
                [a](std::size_t node, const AlgebraElement& x) { return a.apply(node, x); });
}

Action coset_action(std::shared_ptr<const FiniteGroup> g, const Subgroup& h, HaarNormalization haar,
                    std::optional<std::vector<double>> measure, bool validate_measure) {
  const auto reps = coset_representatives(*g, h);
  const auto idx = coset_index(*g, h, reps);
  const std::size_t t = reps.size();
  std::vector<std::size_t> map(g->size() * t);
  for (std::size_t a = 0; a < g->size(); ++a)
    for (std::size_t p = 0; p < t; ++p) map[a * t + p] = idx[g->mul(a, reps[p])];
  std::vector<double> mu = measure.value_or(std::vector<double>(t, 1.0));
  if (mu.size() != t) throw ConfigError("coset measure needs " + std::to_string(t) + " values");
  Action a = permutation_action(g, haar, std::move(map), std::move(mu), validate_measure);
  return Action("cosets", a.group_ptr(), a.shape(),
                [a](std::size_t node, const AlgebraElement& x) { return a.apply(node, x); });
}

Action induced_action(std::shared_ptr<const FiniteGroup> g, const Subgroup& h, const Action& inner,
                      HaarNormalization haar) {
  if (!inner.group().is_finite() || inner.group().size() != h.group.size())
    throw StructuralError("inner action must be an action of the subgroup H");
  const auto reps = coset_representatives(*g, h);
  const auto idx = coset_index(*g, h, reps);
  const std::size_t r = reps.size();
  std::vector<std::size_t> to_h(g->size(), h.group.size());
  for (std::size_t i = 0; i < h.embedding.size(); ++i) to_h[h.embedding[i]] = i;

  // For g and target copy n: g^{-1} g_n = g_m h, stored as (m, index of h^{-1} in H).
  auto table = std::make_shared<std::vector<std::pair<std::size_t, std::size_t>>>(g->size() * r);
  for (std::size_t a = 0; a < g->size(); ++a)
    for (std::size_t n = 0; n < r; ++n) {
      const std::size_t e = g->mul(g->inv(a), reps[n]);
      const std::size_t m = idx[e];
      const std::size_t hh = to_h[g->mul(g->inv(reps[m]), e)];
      if (hh >= h.group.size()) throw StructuralError("coset decomposition failed");
      (*table)[a * r + n] = {m, h.group.inv(hh)};
    }

  const ShapePtr inner_shape = inner.shape();
  const std::size_t k = inner_shape->num_blocks();
  std::vector<int> dims;
  std::vector<double> weights;
  for (std::size_t n = 0; n < r; ++n) {
    dims.insert(dims.end(), inner_shape->block_dims().begin(), inner_shape->block_dims().end());
    weights.insert(weights.end(), inner_shape->trace_weights().begin(), inner_shape->trace_weights().end());
  }
  auto shape = std::make_shared<const AlgebraShape>(std::move(dims), std::move(weights));
  auto model = std::make_shared<const GroupModel>(GroupModel::finite(g, haar));
  return Action("induced", model, shape, [inner, inner_shape, table, r, k](std::size_t a, const AlgebraElement& x) {
    std::vector<Matrix> out(r * k);
    for (std::size_t n = 0; n < r; ++n) {
      const auto [m, hinv] = (*table)[a * r + n];
      std::vector<Matrix> src(x.blocks().begin() + static_cast<long>(m * k),
                              x.blocks().begin() + static_cast<long>((m + 1) * k));
      const AlgebraElement moved = inner.apply(hinv, AlgebraElement(inner_shape, std::move(src)));
      for (std::size_t j = 0; j < k; ++j) out[n * k + j] = moved.block(j);
    }
    return AlgebraElement(x.shape(), std::move(out));
  });
}

std::vector<AlgebraElement> structure_basis(const StructuralProbe& probe) {
  std::vector<AlgebraElement> basis;
  const auto& s = *probe.shape;
  for (std::size_t k = 0; k < s.num_blocks(); ++k) {
    int lo = 0;
    int hi = s.dim(k);
    if (probe.window && s.num_blocks() == 1) std::tie(lo, hi) = *probe.window;
    for (int i = lo; i < hi; ++i)
      for (int j = lo; j < hi; ++j) basis.push_back(AlgebraElement::unit(probe.shape, k, i, j));
  }
  return basis;
}

AlgebraElement compress_to_window(const StructuralProbe& probe, const AlgebraElement& x) {
  if (!probe.window) return x;
  const auto [lo, hi] = *probe.window;
  AlgebraElement y = AlgebraElement::zero(x.shape());
  y.block(0).block(lo, lo, hi - lo, hi - lo) = x.block(0).block(lo, lo, hi - lo, hi - lo);
  return y;
}

std::size_t fixed_point_dimension(const StructuralProbe& probe, double threshold) {
  const bool commutant = !probe.commutant_generators.empty();
  StructuralProbe full = probe;
  if (commutant) full.window.reset();
  const auto basis = structure_basis(full);
  if (basis.empty()) return 0;
  const std::size_t ngen = commutant ? probe.commutant_generators.size() : probe.generators.size();
  if (ngen == 0) return basis.size();
  const Eigen::Index cols = static_cast<Eigen::Index>(basis.size());
  const Eigen::Index per = vectorize(basis.front()).size();
  Matrix a(per * static_cast<Eigen::Index>(ngen), cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    const AlgebraElement& b = basis[static_cast<std::size_t>(j)];
    for (std::size_t gi = 0; gi < ngen; ++gi) {
      Eigen::VectorXcd v;
      if (commutant) {
        const Matrix& u = probe.commutant_generators[gi];
        v = (u * b.block(0) - b.block(0) * u).reshaped();
      } else {
        v = vectorize(probe.generators[gi].transform(b) - b);
      }
      a.block(static_cast<Eigen::Index>(gi) * per, j, per, 1) = v;
    }
  }
  Eigen::BDCSVD<Matrix> svd(a);
  const auto& s = svd.singularValues();
  const double cut = threshold * std::max(1.0, s.size() ? s(0) : 0.0);
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cut) ++rank;
  return basis.size() - rank;
}

std::size_t fixed_point_dimension(const Action& action, double threshold) {
  return fixed_point_dimension(action.probe(), threshold);
}

CheckReport is_trace_preserving(const Action& action, Tolerance tol) {
  const auto& p = action.probe();
  double defect = 0.0;
  double scale = 0.0;
  for (const auto& b : structure_basis(p)) {
    const cplx t = trace(b);
    scale = std::max(scale, std::abs(t));
    for (const auto& g : p.generators) defect = std::max(defect, std::abs(trace(g.transform(b)) - t));
  }
  return defect_report("action.trace_preserving", "trace-invariance", defect, std::max(scale, 1.0), tol,
                       p.sampled ? "sampled generators" : "");
}

CheckReport check_homomorphism(const Action& action, std::mt19937_64& rng, Tolerance tol) {
  const auto& p = action.probe();
  const auto xs = probe_samples(p, rng, 2);
  double defect = 0.0;
  double scale = 0.0;
  for (const auto& x : xs) scale = std::max(scale, x.norm_inf());
  for (const auto& [g, h, gh] : p.compositions)
    for (const auto& x : xs) {
      const AlgebraElement lhs = p.generators[g].transform(p.generators[h].transform(x));
      defect = std::max(defect, max_abs_diff(lhs, p.generators[gh].transform(x)));
    }
  std::ostringstream notes;
  notes << p.compositions.size() << (p.sampled ? " sampled" : "") << " composition triples";
  return defect_report("action.homomorphism", "group-homomorphism", defect, scale, tol, notes.str());
}

CheckReport check_automorphism(const Action& action, std::mt19937_64& rng, Tolerance tol) {
  const auto& p = action.probe();
  const auto xs = probe_samples(p, rng, 2);
  const auto ys = probe_samples(p, rng, 2);
  double defect = 0.0;
  double scale = 0.0;
  const AlgebraElement one = AlgebraElement::identity(p.shape);
  for (const auto& g : p.generators) {
    if (!p.window) defect = std::max(defect, max_abs_diff(g.transform(one), one));
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const auto& x = xs[i];
      const auto& y = ys[i];
      const AlgebraElement gx = g.transform(x);
      scale = std::max(scale, x.norm_inf() * y.norm_inf());
      defect = std::max(defect, max_abs_diff(g.transform(x * y), gx * g.transform(y)));
      defect = std::max(defect, max_abs_diff(g.transform(x.adjoint()), gx.adjoint()));
    }
  }
  return defect_report("action.automorphism", "star-automorphism", defect, std::max(scale, 1.0), tol,
                       p.window ? "unitality not checked on windowed probe" : "");
}

CheckReport check_lp_isometry(const Action& action, std::mt19937_64& rng, Tolerance tol) {
  const auto& p = action.probe();
  const auto xs = probe_samples(p, rng, 2);
  double worst = 0.0;
  for (const auto& g : p.generators)
    for (const auto& x : xs) {
      const AlgebraElement gx = g.transform(x);
      for (double q : {1.0, 2.0, 3.0, kInfinity}) {
        const double nx = p_norm(x, q);
        worst = std::max(worst, std::abs(p_norm(gx, q) - nx) / nx);
      }
    }
  return defect_report("action.lp_isometry", "lp-isometry", worst, 1.0, tol, "relative, p in {1,2,3,inf}");
}

CheckReport check_ergodic(const Action& action) {
  const auto& p = action.probe();
  const auto dim = static_cast<double>(fixed_point_dimension(p));
  CheckReport r = equality_report("action.ergodic", "ergodicity", dim, 1.0, {0.0, 0.0},
                                  !p.commutant_generators.empty() ? "sampled ergodicity via commutant of generators"
                                                  : (p.sampled ? "sampled ergodicity" : "fixed-point dimension"));
  return r;
}

}  // namespace qha
