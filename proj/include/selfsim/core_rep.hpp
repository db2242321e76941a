#pragma once

// The matrix picture of the finite core F^(n) inside M_{N^n}(C(K)): the
// degenerate algebra D^{gamma^n} cut out by row/column identification
// equations at branch values, the block-diagonal level embeddings, and the
// representation pi of graded core elements. See levels.hpp for the flat
// index convention.

#include "selfsim/levels.hpp"
#include "selfsim/poly.hpp"

#include <Eigen/Dense>

namespace selfsim {

struct MatrixField {
  int level = 0;
  int n_dim = 1;                // N^level
  std::vector<Poly> entries;    // row-major n_dim x n_dim
  bool d_member_flag = false;   // claimed membership in D^{gamma^level}

  Poly& at(int r, int c) { return entries[r * n_dim + c]; }
  const Poly& at(int r, int c) const { return entries[r * n_dim + c]; }

  Eigen::MatrixXcd eval(const QVec& x) const;
  Eigen::MatrixXcd eval(const std::vector<double>& x) const;

  static MatrixField zero(const SelfSimilarSystem& sys, int level);
  static MatrixField identity(const SelfSimilarSystem& sys, int level);
  static MatrixField scalar(const SelfSimilarSystem& sys, const Poly& a);  // level 0

  MatrixField adjoint() const;
  double sum_coeff_abs() const;
};

MatrixField mf_add(const MatrixField& a, const MatrixField& b);
MatrixField mf_sub(const MatrixField& a, const MatrixField& b);
MatrixField mf_mul(const MatrixField& a, const MatrixField& b);
MatrixField mf_scale(const MatrixField& a, Cplx s);
// pointwise scalar-function multiple (the A-module structure of D^{gamma^n})
MatrixField mf_mul_scalar_field(const MatrixField& a, const Poly& v);

// Row/column identification equations of D^{gamma^n} at every c in
// C_{gamma^n}; defect is the largest violation found.
bool d_membership(const LevelStructure& ls, const MatrixField& m, double tol = 1e-12,
                  double* defect = nullptr);

// T (x) I_{n-r}: block diagonal pullback; exact word composition, one
// polynomial substitution per entry.
MatrixField embed(const SelfSimilarSystem& sys, const MatrixField& t, int target_level);

struct GradedCoreElement {
  int level = 0;
  std::vector<MatrixField> comp;  // comp[r] has level r; size level+1

  static GradedCoreElement zero(const SelfSimilarSystem& sys, int level);
  static GradedCoreElement unit(const SelfSimilarSystem& sys, int level);
  static GradedCoreElement from_component(const SelfSimilarSystem& sys, MatrixField t, int level);
};

GradedCoreElement graded_pad(const SelfSimilarSystem& sys, const GradedCoreElement& t, int level);
GradedCoreElement graded_add(const GradedCoreElement& a, const GradedCoreElement& b);
GradedCoreElement graded_sub(const GradedCoreElement& a, const GradedCoreElement& b);
GradedCoreElement graded_scale(const GradedCoreElement& a, Cplx s);
GradedCoreElement graded_adjoint(const GradedCoreElement& a);
GradedCoreElement graded_mul(const SelfSimilarSystem& sys, const GradedCoreElement& a,
                             const GradedCoreElement& b);

// Pi^{(level)}: sum of the embedded components.
MatrixField pi(const SelfSimilarSystem& sys, const GradedCoreElement& t);

// Largest singular value over grid(depth) plus any extra exact points.
double sup_norm(const SelfSimilarSystem& sys, const MatrixField& m, int grid_depth,
                const std::vector<QVec>& extra_points = {});

// Multiplying by a scalar field vanishing on B_gamma pushes every component
// one level up without changing the represented operator.
GradedCoreElement compact_absorption(const SelfSimilarSystem& sys,
                                     const std::vector<QVec>& b_gamma,
                                     const GradedCoreElement& t, const Poly& v,
                                     double tol = 1e-12);

// Fiber of D^{gamma^n} at an exact point: dimension w_c^2 and the matrix
// units theta_{u_i, u_j} built from the fiber basis.
struct FiberAlgebra {
  int w = 0;
  std::vector<Eigen::MatrixXcd> units;  // w*w matrices, unit (i,j) at index i*w+j
};
FiberAlgebra fiber_algebra(const SelfSimilarSystem& sys, const MembershipOracle& oracle,
                           const QVec& c, int level);
FiberAlgebra fiber_algebra_local(int total_dim, const std::vector<std::vector<int>>& groups);

}  // namespace selfsim
