#include "selfsim/core_rep.hpp"

#include "selfsim/bimodule.hpp"

#include <algorithm>

namespace selfsim {

namespace {
long pow_long(long base, int e) {
  long r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}
}  // namespace

Eigen::MatrixXcd MatrixField::eval(const QVec& x) const { return eval(qvec_to_double(x)); }

Eigen::MatrixXcd MatrixField::eval(const std::vector<double>& x) const {
  Eigen::MatrixXcd m(n_dim, n_dim);
  for (int r = 0; r < n_dim; ++r)
    for (int c = 0; c < n_dim; ++c) m(r, c) = at(r, c).eval(x);
  return m;
}

MatrixField MatrixField::zero(const SelfSimilarSystem& sys, int level) {
  MatrixField m;
  m.level = level;
  m.n_dim = static_cast<int>(pow_long(sys.branch_count(), level));
  m.entries.assign(static_cast<size_t>(m.n_dim) * m.n_dim, Poly(sys.dimension));
  m.d_member_flag = true;
  return m;
}

MatrixField MatrixField::identity(const SelfSimilarSystem& sys, int level) {
  MatrixField m = zero(sys, level);
  for (int i = 0; i < m.n_dim; ++i) m.at(i, i) = Poly::constant(sys.dimension, Cplx(1));
  m.d_member_flag = level == 0;  // the unit of M_{N^n}(A) is not compact for n >= 1
  return m;
}

MatrixField MatrixField::scalar(const SelfSimilarSystem& sys, const Poly& a) {
  MatrixField m;
  m.level = 0;
  m.n_dim = 1;
  m.entries = {a};
  m.d_member_flag = true;
  return m;
}

MatrixField MatrixField::adjoint() const {
  MatrixField m = *this;
  for (int r = 0; r < n_dim; ++r)
    for (int c = 0; c < n_dim; ++c) m.at(r, c) = at(c, r).conjugated();
  return m;
}

double MatrixField::sum_coeff_abs() const {
  double s = 0;
  for (const auto& p : entries) s = std::max(s, p.sum_coeff_abs());
  return s;
}

static void check_same_shape(const MatrixField& a, const MatrixField& b) {
  if (a.level != b.level || a.n_dim != b.n_dim)
    throw SystemError("matrix field level mismatch");
}

MatrixField mf_add(const MatrixField& a, const MatrixField& b) {
  check_same_shape(a, b);
  MatrixField r = a;
  for (size_t i = 0; i < r.entries.size(); ++i) r.entries[i] += b.entries[i];
  r.d_member_flag = a.d_member_flag && b.d_member_flag;
  return r;
}

MatrixField mf_sub(const MatrixField& a, const MatrixField& b) {
  check_same_shape(a, b);
  MatrixField r = a;
  for (size_t i = 0; i < r.entries.size(); ++i) r.entries[i] -= b.entries[i];
  r.d_member_flag = a.d_member_flag && b.d_member_flag;
  return r;
}

MatrixField mf_mul(const MatrixField& a, const MatrixField& b) {
  check_same_shape(a, b);
  MatrixField r = a;
  for (int i = 0; i < r.n_dim; ++i)
    for (int j = 0; j < r.n_dim; ++j) {
      Poly acc(a.entries[0].dim());
      for (int k = 0; k < r.n_dim; ++k) {
        if (a.at(i, k).is_zero() || b.at(k, j).is_zero()) continue;
        acc += a.at(i, k) * b.at(k, j);
      }
      r.at(i, j) = acc;
    }
  r.d_member_flag = a.d_member_flag || b.d_member_flag;  // D is an ideal in E
  return r;
}

MatrixField mf_scale(const MatrixField& a, Cplx s) {
  MatrixField r = a;
  for (auto& p : r.entries) p *= s;
  return r;
}

MatrixField mf_mul_scalar_field(const MatrixField& a, const Poly& v) {
  MatrixField r = a;
  for (auto& p : r.entries) p = p * v;
  return r;
}

bool d_membership(const LevelStructure& ls, const MatrixField& m, double tol, double* defect) {
  double worst = 0;
  for (const auto& fiber : ls.fibers) {
    Eigen::MatrixXcd vals = m.eval(fiber.c);
    double scale = std::max(1.0, vals.cwiseAbs().maxCoeff());
    for (const auto& g : fiber.groups) {
      if (g.size() < 2) continue;
      for (size_t a = 1; a < g.size(); ++a)
        for (int i = 0; i < m.n_dim; ++i) {
          worst = std::max(worst, std::abs(vals(g[a], i) - vals(g[0], i)) / scale);
          worst = std::max(worst, std::abs(vals(i, g[a]) - vals(i, g[0])) / scale);
        }
    }
  }
  if (defect) *defect = worst;
  return worst <= tol;
}

MatrixField embed(const SelfSimilarSystem& sys, const MatrixField& t, int target_level) {
  if (target_level < t.level) throw SystemError("embed target below component level");
  if (target_level == t.level) return t;
  const int n = sys.branch_count();
  MatrixField out = MatrixField::zero(sys, target_level);
  const long blocks = pow_long(n, target_level - t.level);
  const int bs = t.n_dim;
  for (long b = 0; b < blocks; ++b) {
    AffineMap w = flat_map(sys, flat_digits(b, n, target_level - t.level));
    for (int r = 0; r < bs; ++r)
      for (int c = 0; c < bs; ++c) {
        if (t.at(r, c).is_zero()) continue;
        out.at(static_cast<int>(b) * bs + r, static_cast<int>(b) * bs + c) =
            t.at(r, c).composed_with(w);
      }
  }
  out.d_member_flag = false;  // lands in E^{gamma^n}, not in the compacts
  return out;
}

GradedCoreElement GradedCoreElement::zero(const SelfSimilarSystem& sys, int level) {
  GradedCoreElement t;
  t.level = level;
  for (int r = 0; r <= level; ++r) t.comp.push_back(MatrixField::zero(sys, r));
  return t;
}

GradedCoreElement GradedCoreElement::unit(const SelfSimilarSystem& sys, int level) {
  GradedCoreElement t = zero(sys, level);
  t.comp[0] = MatrixField::scalar(sys, Poly::constant(sys.dimension, Cplx(1)));
  return t;
}

GradedCoreElement GradedCoreElement::from_component(const SelfSimilarSystem& sys, MatrixField m,
                                                    int level) {
  GradedCoreElement t = zero(sys, level);
  if (m.level > level) throw SystemError("component above element level");
  t.comp[m.level] = std::move(m);
  return t;
}

GradedCoreElement graded_pad(const SelfSimilarSystem& sys, const GradedCoreElement& t, int level) {
  if (level < t.level) throw SystemError("pad below current level");
  GradedCoreElement r = t;
  r.level = level;
  for (int k = t.level + 1; k <= level; ++k) r.comp.push_back(MatrixField::zero(sys, k));
  return r;
}

static void check_same_level(const GradedCoreElement& a, const GradedCoreElement& b) {
  if (a.level != b.level) throw SystemError("graded element level mismatch");
}

GradedCoreElement graded_add(const GradedCoreElement& a, const GradedCoreElement& b) {
  check_same_level(a, b);
  GradedCoreElement r = a;
  for (size_t i = 0; i < r.comp.size(); ++i) r.comp[i] = mf_add(r.comp[i], b.comp[i]);
  return r;
}

GradedCoreElement graded_sub(const GradedCoreElement& a, const GradedCoreElement& b) {
  check_same_level(a, b);
  GradedCoreElement r = a;
  for (size_t i = 0; i < r.comp.size(); ++i) r.comp[i] = mf_sub(r.comp[i], b.comp[i]);
  return r;
}

GradedCoreElement graded_scale(const GradedCoreElement& a, Cplx s) {
  GradedCoreElement r = a;
  for (auto& c : r.comp) c = mf_scale(c, s);
  return r;
}

GradedCoreElement graded_adjoint(const GradedCoreElement& a) {
  GradedCoreElement r = a;
  for (auto& c : r.comp) c = c.adjoint();
  return r;
}

GradedCoreElement graded_mul(const SelfSimilarSystem& sys, const GradedCoreElement& a,
                             const GradedCoreElement& b) {
  check_same_level(a, b);
  // (T_r (x) I)(S_s (x) I) sits at level t = max(r,s); the lower component is
  // embedded first, the product is a compact at level t (D is an ideal).
  GradedCoreElement out = GradedCoreElement::zero(sys, a.level);
  for (int r = 0; r <= a.level; ++r) {
    if (a.comp[r].sum_coeff_abs() == 0) continue;
    for (int s = 0; s <= b.level; ++s) {
      if (b.comp[s].sum_coeff_abs() == 0) continue;
      int t = std::max(r, s);
      MatrixField prod = mf_mul(embed(sys, a.comp[r], t), embed(sys, b.comp[s], t));
      out.comp[t] = mf_add(out.comp[t], prod);
    }
  }
  for (int t = 1; t <= out.level; ++t) out.comp[t].d_member_flag = true;
  return out;
}

MatrixField pi(const SelfSimilarSystem& sys, const GradedCoreElement& t) {
  MatrixField acc = MatrixField::zero(sys, t.level);
  for (const auto& c : t.comp) acc = mf_add(acc, embed(sys, c, t.level));
  acc.d_member_flag = false;
  return acc;
}

double sup_norm(const SelfSimilarSystem& sys, const MatrixField& m, int grid_depth,
                const std::vector<QVec>& extra_points) {
  AttractorGrid g = generate_grid(sys, grid_depth);
  double best = 0;
  auto account = [&](const QVec& p) {
    Eigen::MatrixXcd v = m.eval(p);
    if (m.n_dim == 1) {
      best = std::max(best, std::abs(v(0, 0)));
      return;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(v);
    best = std::max(best, svd.singularValues()(0));
  };
  for (const auto& p : g.points) account(p);
  for (const auto& p : extra_points) account(p);
  return best;
}

GradedCoreElement compact_absorption(const SelfSimilarSystem& sys,
                                     const std::vector<QVec>& b_gamma,
                                     const GradedCoreElement& t, const Poly& v, double tol) {
  for (const auto& b : b_gamma) {
    double val = std::abs(v.eval(b));
    if (val > tol)
      throw SystemError("absorbing field does not vanish at branch point " + qvec_to_string(b));
  }
  GradedCoreElement out = GradedCoreElement::zero(sys, t.level + 1);
  for (int r = 0; r <= t.level; ++r) {
    MatrixField scaled = mf_mul_scalar_field(t.comp[r], v);
    out.comp[r + 1] = mf_add(out.comp[r + 1], embed(sys, scaled, r + 1));
    out.comp[r + 1].d_member_flag = true;
  }
  return out;
}

FiberAlgebra fiber_algebra_local(int total_dim, const std::vector<std::vector<int>>& groups) {
  FiberBasis basis = fiber_basis_local(total_dim, groups);
  FiberAlgebra fa;
  fa.w = basis.w;
  for (int i = 0; i < fa.w; ++i)
    for (int j = 0; j < fa.w; ++j)
      fa.units.push_back(basis.vectors[i] * basis.vectors[j].adjoint());
  return fa;
}

FiberAlgebra fiber_algebra(const SelfSimilarSystem& sys, const MembershipOracle& oracle,
                           const QVec& c, int level) {
  FiberBasis basis = fiber_basis(sys, oracle, c, level);
  FiberAlgebra fa;
  fa.w = basis.w;
  for (int i = 0; i < fa.w; ++i)
    for (int j = 0; j < fa.w; ++j)
      fa.units.push_back(basis.vectors[i] * basis.vectors[j].adjoint());
  return fa;
}

}  // namespace selfsim
