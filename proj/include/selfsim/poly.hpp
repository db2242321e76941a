#pragma once

// Dense complex polynomials in the ambient coordinates (1 or 2 variables).
// Operator-valued fields store one of these per component/entry; evaluation
// happens at exact points converted to doubles, so pullbacks along exact
// affine words never resample anything.

#include "selfsim/linalg.hpp"

#include <complex>
#include <vector>

namespace selfsim {

using Cplx = std::complex<double>;

class Poly {
 public:
  Poly() : dim_(1), nx_(1), ny_(1), c_(1, Cplx(0)) {}
  explicit Poly(int dim) : dim_(dim), nx_(1), ny_(1), c_(1, Cplx(0)) {}

  static Poly constant(int dim, Cplx v);
  static Poly coordinate(int dim, int var);  // var in [0, dim)
  // coefficient grid: coef[ex + nx*ey] multiplies x^ex y^ey (ey = 0 in 1-D)
  static Poly from_coeffs(int dim, int nx, int ny, std::vector<Cplx> coef);

  int dim() const { return dim_; }
  int deg_x() const { return nx_ - 1; }
  int deg_y() const { return ny_ - 1; }
  Cplx coeff(int ex, int ey) const;

  bool is_zero() const;
  double sum_coeff_abs() const;

  Cplx eval(const std::vector<double>& x) const;
  Cplx eval(const QVec& x) const { return eval(qvec_to_double(x)); }

  Poly conjugated() const;  // matches pointwise conjugation on real arguments

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(Cplx s);
  friend Poly operator+(Poly a, const Poly& b) { a += b; return a; }
  friend Poly operator-(Poly a, const Poly& b) { a -= b; return a; }
  friend Poly operator*(Poly a, Cplx s) { a *= s; return a; }
  friend Poly operator*(const Poly& a, const Poly& b);

  // p(A x + b) for an exact affine map of matching dimension
  Poly composed_with(const AffineMap& map) const;

  double max_coeff_diff(const Poly& o) const;

 private:
  void trim();
  int dim_;
  int nx_, ny_;
  std::vector<Cplx> c_;
};

}  // namespace selfsim
