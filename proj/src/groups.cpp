#include "qha/groups.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace qha {

FiniteGroup::FiniteGroup(std::string name, std::vector<std::size_t> table,
                         std::vector<std::string> labels, std::vector<int> cyclic_factors)
    : name_(std::move(name)),
      n_(labels.size()),
      table_(std::move(table)),
      labels_(std::move(labels)),
      factors_(std::move(cyclic_factors)) {
  if (n_ == 0) throw StructuralError("group must have at least one element");
  if (table_.size() != n_ * n_) throw StructuralError("multiplication table has wrong size");
  for (auto v : table_)
    if (v >= n_) throw StructuralError("multiplication table entry out of range");

  // Latin square: every row and column is a permutation.
  std::vector<char> seen(n_);
  for (std::size_t a = 0; a < n_; ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t b = 0; b < n_; ++b) {
      if (seen[mul(a, b)]++) throw StructuralError("table row is not a permutation: " + name_);
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t b = 0; b < n_; ++b) {
      if (seen[mul(b, a)]++) throw StructuralError("table column is not a permutation: " + name_);
    }
  }

  bool found = false;
  for (std::size_t e = 0; e < n_ && !found; ++e) {
    bool ok = true;
    for (std::size_t a = 0; a < n_ && ok; ++a) ok = mul(e, a) == a && mul(a, e) == a;
    if (ok) {
      identity_ = e;
      found = true;
    }
  }
  if (!found) throw StructuralError("group table has no identity: " + name_);

  inverse_.assign(n_, n_);
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = 0; b < n_; ++b)
      if (mul(a, b) == identity_) {
        if (mul(b, a) != identity_) throw StructuralError("left and right inverses differ");
        inverse_[a] = b;
      }

  auto assoc = [&](std::size_t a, std::size_t b, std::size_t c) {
    if (mul(mul(a, b), c) != mul(a, mul(b, c)))
      throw StructuralError("multiplication table is not associative: " + name_);
  };
  if (n_ <= 24) {
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b)
        for (std::size_t c = 0; c < n_; ++c) assoc(a, b, c);
  } else {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<std::size_t> pick(0, n_ - 1);
    for (int t = 0; t < 4000; ++t) assoc(pick(rng), pick(rng), pick(rng));
  }

  if (!factors_.empty()) {
    std::size_t prod = 1;
    for (int f : factors_) prod *= static_cast<std::size_t>(f);
    if (prod != n_) throw StructuralError("cyclic factors do not multiply to the group order");
  }
}

bool FiniteGroup::is_abelian() const {
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = a + 1; b < n_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

std::size_t FiniteGroup::order_of(std::size_t a) const {
  std::size_t k = 1;
  for (std::size_t x = a; x != identity_; x = mul(x, a)) ++k;
  return k;
}

std::vector<int> FiniteGroup::coordinates(std::size_t a) const {
  if (factors_.empty()) throw UnsupportedError("group " + name_ + " has no cyclic coordinates");
  std::vector<int> c(factors_.size());
  for (std::size_t i = factors_.size(); i-- > 0;) {
    c[i] = static_cast<int>(a % static_cast<std::size_t>(factors_[i]));
    a /= static_cast<std::size_t>(factors_[i]);
  }
  return c;
}

FiniteGroup cyclic(int n) {
  if (n <= 0) throw ParameterError("cyclic(n) requires n >= 1");
  const auto N = static_cast<std::size_t>(n);
  std::vector<std::size_t> table(N * N);
  std::vector<std::string> labels(N);
  for (std::size_t a = 0; a < N; ++a) {
    labels[a] = std::to_string(a);
    for (std::size_t b = 0; b < N; ++b) table[a * N + b] = (a + b) % N;
  }
  return FiniteGroup("cyclic(" + std::to_string(n) + ")", std::move(table), std::move(labels), {n});
}

FiniteGroup product(const FiniteGroup& g, const FiniteGroup& h) {
  const std::size_t ng = g.size();
  const std::size_t nh = h.size();
  const std::size_t n = ng * nh;
  std::vector<std::size_t> table(n * n);
  std::vector<std::string> labels(n);
  for (std::size_t a = 0; a < n; ++a) {
    labels[a] = "(" + g.label(a / nh) + "," + h.label(a % nh) + ")";
    for (std::size_t b = 0; b < n; ++b)
      table[a * n + b] = g.mul(a / nh, b / nh) * nh + h.mul(a % nh, b % nh);
  }
  std::vector<int> factors;
  if (!g.cyclic_factors().empty() && !h.cyclic_factors().empty()) {
    factors = g.cyclic_factors();
    factors.insert(factors.end(), h.cyclic_factors().begin(), h.cyclic_factors().end());
  }
  return FiniteGroup(g.name() + "x" + h.name(), std::move(table), std::move(labels),
                     std::move(factors));
}

FiniteGroup symmetric3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  const std::size_t n = perms.size();
  auto find = [&](const std::array<int, 3>& q) {
    return static_cast<std::size_t>(std::find(perms.begin(), perms.end(), q) - perms.begin());
  };
  std::vector<std::size_t> table(n * n);
  std::vector<std::string> labels(n);
  for (std::size_t a = 0; a < n; ++a) {
    labels[a] = std::to_string(perms[a][0]) + std::to_string(perms[a][1]) + std::to_string(perms[a][2]);
    for (std::size_t b = 0; b < n; ++b) {
      std::array<int, 3> c{};
      for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
      table[a * n + b] = find(c);
    }
  }
  return FiniteGroup("s3", std::move(table), std::move(labels));
}

namespace {

std::vector<std::string> split_product(const std::string& name) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : name) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == 'x' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

FiniteGroup parse_factor(const std::string& s) {
  if (s == "s3") return symmetric3();
  const std::string pre = "cyclic(";
  if (s.rfind(pre, 0) == 0 && s.size() > pre.size() + 1 && s.back() == ')') {
    const std::string num = s.substr(pre.size(), s.size() - pre.size() - 1);
    if (!num.empty() && std::all_of(num.begin(), num.end(), ::isdigit)) {
      const int n = std::stoi(num);
      if (n <= 0) throw ConfigError("cyclic order must be positive in '" + s + "'");
      return cyclic(n);
    }
  }
  std::ostringstream os;
  os << "unknown group '" << s << "'; valid names:";
  for (const auto& f : group_name_forms()) os << " " << f;
  throw ConfigError(os.str());
}

}  // namespace

std::vector<std::string> group_name_forms() { return {"cyclic(<n>)", "s3", "<A>x<B>"}; }

FiniteGroup parse_group(const std::string& name) {
  const auto parts = split_product(name);
  FiniteGroup g = parse_factor(parts.front());
  for (std::size_t i = 1; i < parts.size(); ++i) g = product(g, parse_factor(parts[i]));
  return g;
}

Subgroup make_subgroup(const FiniteGroup& g, std::vector<std::size_t> elements, std::string name) {
  const std::size_t m = elements.size();
  std::vector<std::size_t> where(g.size(), g.size());
  for (std::size_t i = 0; i < m; ++i) {
    if (elements[i] >= g.size()) throw StructuralError("subgroup element out of range");
    if (where[elements[i]] != g.size()) throw StructuralError("duplicate subgroup element");
    where[elements[i]] = i;
  }
  std::vector<std::size_t> table(m * m);
  std::vector<std::string> labels(m);
  for (std::size_t a = 0; a < m; ++a) {
    labels[a] = g.label(elements[a]);
    for (std::size_t b = 0; b < m; ++b) {
      const std::size_t p = where[g.mul(elements[a], elements[b])];
      if (p == g.size()) throw StructuralError("not a subgroup: not closed under multiplication");
      table[a * m + b] = p;
    }
  }
  return {FiniteGroup(std::move(name), std::move(table), std::move(labels)), std::move(elements)};
}

Subgroup subgroup_by_name(const FiniteGroup& g, const std::string& h_name) {
  FiniteGroup h = parse_group(h_name);
  std::vector<std::size_t> emb(h.size());
  if (h.name() == g.name()) {
    for (std::size_t i = 0; i < h.size(); ++i) emb[i] = i;
  } else if (g.name() == "s3" && (h.name() == "cyclic(3)" || h.name() == "cyclic(2)" ||
                                  h.name() == "cyclic(1)")) {
    // s3 elements in lexicographic order: 012 021 102 120 201 210.
    if (h.name() == "cyclic(3)") emb = {0, 3, 4};
    if (h.name() == "cyclic(2)") emb = {0, 2};
    if (h.name() == "cyclic(1)") emb = {0};
  } else {
    const auto& gf = g.cyclic_factors();
    const auto& hf = h.cyclic_factors();
    if (gf.empty() || hf.size() != gf.size())
      throw ConfigError("no canonical embedding of " + h.name() + " into " + g.name());
    for (std::size_t i = 0; i < gf.size(); ++i)
      if (gf[i] % hf[i] != 0)
        throw ConfigError("no canonical embedding of " + h.name() + " into " + g.name());
    for (std::size_t a = 0; a < h.size(); ++a) {
      const auto c = h.coordinates(a);
      std::size_t idx = 0;
      for (std::size_t i = 0; i < gf.size(); ++i)
        idx = idx * static_cast<std::size_t>(gf[i]) +
              static_cast<std::size_t>(c[i] * (gf[i] / hf[i]));
      emb[a] = idx;
    }
  }
  for (std::size_t a = 0; a < h.size(); ++a)
    for (std::size_t b = 0; b < h.size(); ++b)
      if (emb[h.mul(a, b)] != g.mul(emb[a], emb[b]))
        throw StructuralError("embedding of " + h.name() + " is not a homomorphism");
  return {std::move(h), std::move(emb)};
}

std::vector<std::size_t> coset_representatives(const FiniteGroup& g, const Subgroup& h) {
  std::vector<char> covered(g.size(), 0);
  std::vector<std::size_t> reps;
  auto take = [&](std::size_t r) {
    reps.push_back(r);
    for (auto hh : h.embedding) {
      const std::size_t e = g.mul(r, hh);
      if (covered[e]) throw StructuralError("cosets overlap; H is not a subgroup");
      covered[e] = 1;
    }
  };
  take(g.identity());
  for (std::size_t a = 0; a < g.size(); ++a)
    if (!covered[a]) take(a);
  return reps;
}

std::vector<std::size_t> coset_index(const FiniteGroup& g, const Subgroup& h,
                                     const std::vector<std::size_t>& reps) {
  std::vector<std::size_t> idx(g.size(), reps.size());
  for (std::size_t n = 0; n < reps.size(); ++n)
    for (auto hh : h.embedding) idx[g.mul(reps[n], hh)] = n;
  return idx;
}

CharacterTable dual_group(const FiniteGroup& g) {
  if (!g.is_abelian()) throw ParameterError("dual_group requires an abelian group");
  const auto& f = g.cyclic_factors();
  if (f.empty()) throw UnsupportedError("dual_group needs a cyclic-product presentation");
  CharacterTable t;
  t.order = g.size();
  t.values.assign(g.size(), std::vector<cplx>(g.size()));
  for (std::size_t u = 0; u < g.size(); ++u) {
    const auto cu = g.coordinates(u);
    for (std::size_t a = 0; a < g.size(); ++a) {
      const auto ca = g.coordinates(a);
      double phase = 0.0;
      for (std::size_t i = 0; i < f.size(); ++i)
        phase += static_cast<double>((cu[i] * ca[i]) % f[i]) / f[i];
      t.values[u][a] = std::polar(1.0, 2.0 * std::numbers::pi * phase);
    }
  }
  return t;
}

FiniteGroup dual_as_group(const FiniteGroup& g) {
  if (!g.is_abelian() || g.cyclic_factors().empty())
    throw ParameterError("dual_as_group requires an abelian cyclic product");
  std::vector<std::size_t> table(g.size() * g.size());
  std::vector<std::string> labels(g.size());
  for (std::size_t a = 0; a < g.size(); ++a) {
    labels[a] = "chi" + g.label(a);
    for (std::size_t b = 0; b < g.size(); ++b) table[a * g.size() + b] = g.mul(a, b);
  }
  return FiniteGroup("dual(" + g.name() + ")", std::move(table), std::move(labels),
                     g.cyclic_factors());
}

QuadratureGroup affine_group(double a_min, double a_max, std::size_t n_a, double b_min,
                             double b_max, std::size_t n_b) {
  if (!(a_min > 0.0) || !(a_max > a_min)) throw ParameterError("affine group needs 0 < a_min < a_max");
  if (!(b_max > b_min)) throw ParameterError("affine group needs b_min < b_max");
  if (n_a < 2 || n_b < 2) throw ParameterError("affine group needs n_a, n_b >= 2");
  QuadratureGroup q;
  q.label = "affine";
  q.n_a = n_a;
  q.n_b = n_b;
  q.log_step = std::log(a_max / a_min) / static_cast<double>(n_a - 1);
  q.b_step = (b_max - b_min) / static_cast<double>(n_b - 1);
  q.nodes.reserve(n_a * n_b);
  q.haar_weights.reserve(n_a * n_b);
  for (std::size_t i = 0; i < n_a; ++i) {
    const double a = a_min * std::exp(q.log_step * static_cast<double>(i));
    for (std::size_t j = 0; j < n_b; ++j) {
      const double b = b_min + q.b_step * static_cast<double>(j);
      q.nodes.push_back({a, b});
      // da = a d(log a), so da db / a^2 = log_step * b_step / a.
      q.haar_weights.push_back(q.log_step * q.b_step / a);
    }
  }
  q.compose = [](const Params& p, const Params& r) -> Params {
    return {p[0] * r[0], p[0] * r[1] + p[1]};
  };
  q.inverse = [](const Params& p) -> Params { return {1.0 / p[0], -p[1] / p[0]}; };
  q.identity = {1.0, 0.0};
  q.modular = [](const Params& p) { return 1.0 / p[0]; };
  return q;
}

std::string to_string(HaarNormalization h) {
  switch (h) {
    case HaarNormalization::counting: return "counting";
    case HaarNormalization::probability: return "probability";
    case HaarNormalization::quadrature: return "quadrature";
  }
  return "counting";
}

HaarNormalization parse_haar(const std::string& s) {
  if (s == "counting") return HaarNormalization::counting;
  if (s == "probability") return HaarNormalization::probability;
  if (s == "quadrature") return HaarNormalization::quadrature;
  throw ConfigError("unknown haar normalization '" + s + "'; valid: counting probability quadrature");
}

GroupModel GroupModel::finite(std::shared_ptr<const FiniteGroup> g, HaarNormalization h) {
  if (h == HaarNormalization::quadrature)
    throw ConfigError("finite groups use counting or probability Haar measure");
  GroupModel m;
  m.norm_ = h;
  const double w = h == HaarNormalization::probability ? 1.0 / static_cast<double>(g->size()) : 1.0;
  m.weights_.assign(g->size(), w);
  m.modular_.assign(g->size(), 1.0);
  m.finite_ = std::move(g);
  return m;
}

GroupModel GroupModel::quadrature(std::shared_ptr<const QuadratureGroup> q) {
  GroupModel m;
  m.norm_ = HaarNormalization::quadrature;
  m.weights_ = q->haar_weights;
  for (double w : m.weights_)
    if (!(w > 0.0)) throw StructuralError("quadrature weights must be positive");
  m.modular_.reserve(q->size());
  for (const auto& p : q->nodes) m.modular_.push_back(q->modular(p));
  m.quad_ = std::move(q);
  return m;
}

bool GroupModel::is_unimodular(double tol) const {
  for (double d : modular_)
    if (std::abs(d - 1.0) > tol) return false;
  return true;
}

const FiniteGroup& GroupModel::finite_group() const {
  if (!finite_) throw UnsupportedError("group model is not finite");
  return *finite_;
}

const QuadratureGroup& GroupModel::quadrature_group() const {
  if (!quad_) throw UnsupportedError("group model is not a quadrature group");
  return *quad_;
}

std::string GroupModel::node_label(std::size_t i) const {
  if (finite_) return finite_->label(i);
  std::ostringstream os;
  os.precision(17);
  const auto& p = quad_->nodes[i];
  os << "(";
  for (std::size_t k = 0; k < p.size(); ++k) os << (k ? "," : "") << p[k];
  os << ")";
  return os.str();
}

std::string GroupModel::label() const { return finite_ ? finite_->name() : quad_->label; }

cplx integrate(const GroupModel& g, std::span<const cplx> values) {
  if (values.size() != g.size()) throw StructuralError("integrand length differs from node count");
  cplx s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) s += g.weight(i) * values[i];
  return s;
}

cplx integrate(const GroupModel& g, const std::function<cplx(std::size_t)>& f) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) s += g.weight(i) * f(i);
  return s;
}

}  // namespace qha
