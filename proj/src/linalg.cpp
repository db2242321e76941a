#include "selfsim/linalg.hpp"

#include <stdexcept>

namespace selfsim {

bool qvec_eq(const QVec& x, const QVec& y) {
  if (x.size() != y.size()) return false;
  for (size_t i = 0; i < x.size(); ++i)
    if (x[i] != y[i]) return false;
  return true;
}

int qvec_cmp(const QVec& x, const QVec& y) {
  if (x.size() != y.size())
    return x.size() < y.size() ? -1 : 1;
  for (size_t i = 0; i < x.size(); ++i) {
    int c = quad_cmp(x[i], y[i]);
    if (c != 0) return c;
  }
  return 0;
}

QVec qvec_sub(const QVec& x, const QVec& y) {
  QVec r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
  return r;
}

Quad qvec_dist2(const QVec& x, const QVec& y) {
  Quad s(Rational(0));
  for (size_t i = 0; i < x.size(); ++i) {
    Quad d = x[i] - y[i];
    s += d * d;
  }
  return s;
}

Quad qvec_l1(const QVec& x) {
  Quad s(Rational(0));
  for (const auto& c : x) s += c.abs();
  return s;
}

std::vector<double> qvec_to_double(const QVec& x) {
  std::vector<double> r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = x[i].to_double();
  return r;
}

std::string qvec_to_string(const QVec& x) {
  std::string s = "(";
  for (size_t i = 0; i < x.size(); ++i) {
    if (i) s += ", ";
    s += quad_to_string(x[i]);
  }
  return s + ")";
}

QMat qmat_identity(int d) {
  QMat m(d, QVec(d, Quad(Rational(0))));
  for (int i = 0; i < d; ++i) m[i][i] = Quad(Rational(1));
  return m;
}

QMat qmat_sub(const QMat& x, const QMat& y) {
  QMat r = x;
  for (size_t i = 0; i < r.size(); ++i)
    for (size_t j = 0; j < r[i].size(); ++j) r[i][j] -= y[i][j];
  return r;
}

QMat qmat_mul(const QMat& x, const QMat& y) {
  size_t d = x.size();
  QMat r(d, QVec(d, Quad(Rational(0))));
  for (size_t i = 0; i < d; ++i)
    for (size_t k = 0; k < d; ++k)
      for (size_t j = 0; j < d; ++j) r[i][j] += x[i][k] * y[k][j];
  return r;
}

QVec qmat_apply(const QMat& m, const QVec& v) {
  QVec r(m.size(), Quad(Rational(0)));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j) r[i] += m[i][j] * v[j];
  return r;
}

Quad qmat_det(const QMat& m) {
  size_t d = m.size();
  if (d == 1) return m[0][0];
  if (d == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  // general case by elimination
  QMat a = m;
  Quad det(Rational(1));
  for (size_t col = 0; col < d; ++col) {
    size_t piv = col;
    while (piv < d && a[piv][col].is_zero()) ++piv;
    if (piv == d) return Quad(Rational(0));
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (size_t r = col + 1; r < d; ++r) {
      Quad f = a[r][col] / a[col][col];
      for (size_t c = col; c < d; ++c) a[r][c] -= f * a[col][c];
    }
  }
  return det;
}

QMat qmat_transpose(const QMat& m) {
  size_t d = m.size();
  QMat r(d, QVec(d));
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) r[j][i] = m[i][j];
  return r;
}

LinearSolve solve_linear(const QMat& m, const QVec& rhs) {
  size_t d = m.size();
  QMat a = m;
  QVec b = rhs;
  size_t rank = 0;
  std::vector<size_t> pivot_col;
  for (size_t col = 0; col < d && rank < d; ++col) {
    size_t piv = rank;
    while (piv < d && a[piv][col].is_zero()) ++piv;
    if (piv == d) continue;
    std::swap(a[piv], a[rank]);
    std::swap(b[piv], b[rank]);
    for (size_t r = 0; r < d; ++r) {
      if (r == rank || a[r][col].is_zero()) continue;
      Quad f = a[r][col] / a[rank][col];
      for (size_t c = col; c < d; ++c) a[r][c] -= f * a[rank][c];
      b[r] -= f * b[rank];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  for (size_t r = rank; r < d; ++r)
    if (!b[r].is_zero()) return {LinearSolve::None, {}};
  if (rank < d) return {LinearSolve::Affine, {}};
  QVec x(d);
  for (size_t r = 0; r < d; ++r) x[pivot_col[r]] = b[r] / a[r][pivot_col[r]];
  return {LinearSolve::Unique, x};
}

QVec AffineMap::operator()(const QVec& x) const {
  if (x.size() != offset.size())
    throw std::invalid_argument("affine map applied to point of wrong dimension");
  QVec r = qmat_apply(matrix, x);
  for (size_t i = 0; i < r.size(); ++i) r[i] += offset[i];
  return r;
}

AffineMap AffineMap::after(const AffineMap& inner) const {
  AffineMap r;
  r.matrix = qmat_mul(matrix, inner.matrix);
  r.offset = qmat_apply(matrix, inner.offset);
  for (size_t i = 0; i < r.offset.size(); ++i) r.offset[i] += offset[i];
  return r;
}

AffineMap AffineMap::identity(int d) {
  return {qmat_identity(d), QVec(d, Quad(Rational(0)))};
}

QVec AffineMap::preimage(const QVec& p) const {
  auto s = solve_linear(matrix, qvec_sub(p, offset));
  if (s.kind != LinearSolve::Unique)
    throw std::domain_error("preimage of a non-injective affine map");
  return s.solution;
}

QVec AffineMap::fixed_point() const {
  QMat i_minus_a = qmat_sub(qmat_identity(dim()), matrix);
  auto s = solve_linear(i_minus_a, offset);
  if (s.kind != LinearSolve::Unique)
    throw std::domain_error("affine map without unique fixed point");
  return s.solution;
}

Quad AffineMap::contraction_upper_bound() const {
  int d = dim();
  // exact route: A^T A == lambda I with lambda a representable square
  QMat gram = qmat_mul(qmat_transpose(matrix), matrix);
  bool scalar = true;
  for (int i = 0; i < d && scalar; ++i)
    for (int j = 0; j < d && scalar; ++j) {
      if (i == j) {
        if (gram[i][j] != gram[0][0]) scalar = false;
      } else if (!gram[i][j].is_zero()) {
        scalar = false;
      }
    }
  if (scalar) {
    auto r = exact_sqrt(gram[0][0]);
    if (r) return *r;
  }
  // fallback: (||A||_inf + ||A||_1)/2 >= sqrt(||A||_inf ||A||_1) >= ||A||_2
  Quad row_max(Rational(0)), col_max(Rational(0));
  for (int i = 0; i < d; ++i) {
    Quad rs(Rational(0)), cs(Rational(0));
    for (int j = 0; j < d; ++j) {
      rs += matrix[i][j].abs();
      cs += matrix[j][i].abs();
    }
    if (rs > row_max) row_max = rs;
    if (cs > col_max) col_max = cs;
  }
  return (row_max + col_max) / Quad(Rational(2));
}

Quad AffineMap::contraction_lower_bound() const {
  Quad dabs = det().abs();
  int d = dim();
  if (d == 1) return dabs;
  Quad c = contraction_upper_bound();
  Quad denom(Rational(1));
  for (int i = 0; i < d - 1; ++i) denom *= c;
  return dabs / denom;
}

}  // namespace selfsim
