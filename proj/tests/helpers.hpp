#pragma once

#include <initializer_list>

#include "qha/algebra.hpp"

namespace qha::test {

inline Matrix mat(std::initializer_list<std::initializer_list<cplx>> rows) {
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (cplx v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline Matrix diag(std::initializer_list<cplx> d) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (cplx v : d) m(i, i) = v, ++i;
  return m;
}

inline AlgebraElement elem(const Matrix& m, double weight = 1.0) { return AlgebraElement::from_matrix(m, weight); }

inline double dist(const AlgebraElement& a, const AlgebraElement& b) { return (a - b).norm_inf(); }

}  // namespace qha::test
