#pragma once

// Small exact vectors/matrices over Q(sqrt3) and affine contractions.
// Dimensions stay tiny (d = 1 or 2 for the built-in systems), so dense
// Gaussian elimination with exact pivots is all we need.

#include "selfsim/scalar.hpp"

#include <optional>
#include <vector>

namespace selfsim {

using QVec = std::vector<Quad>;
using QMat = std::vector<std::vector<Quad>>;  // row-major, square

bool qvec_eq(const QVec& x, const QVec& y);
int qvec_cmp(const QVec& x, const QVec& y);  // lexicographic, exact
QVec qvec_sub(const QVec& x, const QVec& y);
Quad qvec_dist2(const QVec& x, const QVec& y);  // squared euclidean distance
Quad qvec_l1(const QVec& x);
std::vector<double> qvec_to_double(const QVec& x);
std::string qvec_to_string(const QVec& x);

QMat qmat_identity(int d);
QMat qmat_sub(const QMat& x, const QMat& y);
QMat qmat_mul(const QMat& x, const QMat& y);
QVec qmat_apply(const QMat& m, const QVec& v);
Quad qmat_det(const QMat& m);
QMat qmat_transpose(const QMat& m);

// Outcome of solving M x = rhs exactly.
struct LinearSolve {
  enum Kind { Unique, None, Affine } kind;  // Affine: solution space of dim >= 1
  QVec solution;                            // valid when kind == Unique
};
LinearSolve solve_linear(const QMat& m, const QVec& rhs);

struct AffineMap {
  QMat matrix;
  QVec offset;

  int dim() const { return static_cast<int>(offset.size()); }
  QVec operator()(const QVec& x) const;

  // this(inner(x)) as a single affine map.
  AffineMap after(const AffineMap& inner) const;

  static AffineMap identity(int d);

  Quad det() const { return qmat_det(matrix); }

  // Exact preimage: the unique y with map(y) == p (matrix must be invertible).
  QVec preimage(const QVec& p) const;

  // Exact fixed point of the map (I - A invertible for proper contractions).
  QVec fixed_point() const;

  // Certified upper bound on the operator 2-norm of the linear part, as a
  // field element. Uses the exact norm when A^T A is a scalar matrix with a
  // representable square root, otherwise (||A||_1 + ||A||_inf)/2 which
  // dominates sqrt(||A||_1 ||A||_inf).
  Quad contraction_upper_bound() const;

  // Certified lower contraction constant: |det A| / c^(d-1) <= sigma_min.
  Quad contraction_lower_bound() const;
};

}  // namespace selfsim
