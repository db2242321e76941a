#pragma once

// The concrete correspondence Z_{gamma^n} inside C(K, C^{N^n}): membership
// (component identification at branch values), inner products, the bimodule
// actions, fiber bases, rank-one operators and the tensor lift.

#include "selfsim/core_rep.hpp"

namespace selfsim {

struct VectorField {
  int level = 1;
  int n_dim = 1;            // N^level
  std::vector<Poly> comp;   // flat-indexed components
  bool z_member = false;

  Eigen::VectorXcd eval(const QVec& x) const;
  static VectorField zero(const SelfSimilarSystem& sys, int level);
  // constant standard basis vector e_flat
  static VectorField basis_vector(const SelfSimilarSystem& sys, int level, int flat);
};

// (f|g)_A(y) = sum_i conj(f_i(y)) g_i(y); conjugate-linear in f.
Poly inner_product(const VectorField& f, const VectorField& g);

// (a . f . a2)_F(y) = a(Gamma_F(y)) f_F(y) a2(y)
VectorField module_action(const SelfSimilarSystem& sys, const Poly& a, const VectorField& f,
                          const Poly& a2);

// Identification equations of Z_{gamma^n} at every c in C_{gamma^n}.
bool check_membership(const LevelStructure& ls, const VectorField& f, double tol = 1e-12,
                      double* defect = nullptr);

// Project arbitrary components onto Z by averaging each label set at each
// branch value and correcting with a bump polynomial that is 1 at the value
// and 0 at the other distinguished values.
VectorField z_project(const SelfSimilarSystem& sys, const LevelStructure& ls, VectorField f);

struct FiberBasis {
  QVec c;
  int w = 0;                              // dim of the fiber = #h^{-n}(c)
  std::vector<std::vector<int>> groups;   // label partition, ordered by least flat index
  std::vector<Eigen::VectorXcd> vectors;  // u_i with entries 1/sqrt(e) on group i
};

FiberBasis fiber_basis_local(int total_dim, const std::vector<std::vector<int>>& groups);
FiberBasis fiber_basis(const SelfSimilarSystem& sys, const MembershipOracle& oracle, const QVec& c,
                       int level);

// theta_{f,g} = [f_i conj(g_j)]_{ij}; requires the membership flags.
MatrixField rank_one(const SelfSimilarSystem& sys, const VectorField& f, const VectorField& g);

// Interior tensor product Z_{gamma^m} (x) Z_{gamma^k} -> Z_{gamma^{m+k}}:
// (f (x) g)_{(F,G)}(x) = f_F(Gamma_G(x)) g_G(x).
VectorField lift(const SelfSimilarSystem& sys, const VectorField& f, const VectorField& g);

// Matrix field acting on a vector field, (M f)_i = sum_j M_ij f_j.
VectorField apply_matrix(const MatrixField& m, const VectorField& f);

}  // namespace selfsim
