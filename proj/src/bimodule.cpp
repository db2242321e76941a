#include "selfsim/bimodule.hpp"

#include <algorithm>
#include <cmath>

namespace selfsim {

namespace {
long pow_long(long base, int e) {
  long r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}
}  // namespace

Eigen::VectorXcd VectorField::eval(const QVec& x) const {
  std::vector<double> xd = qvec_to_double(x);
  Eigen::VectorXcd v(n_dim);
  for (int i = 0; i < n_dim; ++i) v(i) = comp[i].eval(xd);
  return v;
}

VectorField VectorField::zero(const SelfSimilarSystem& sys, int level) {
  VectorField f;
  f.level = level;
  f.n_dim = static_cast<int>(pow_long(sys.branch_count(), level));
  f.comp.assign(f.n_dim, Poly(sys.dimension));
  f.z_member = true;
  return f;
}

VectorField VectorField::basis_vector(const SelfSimilarSystem& sys, int level, int flat) {
  VectorField f = zero(sys, level);
  f.comp[flat] = Poly::constant(sys.dimension, Cplx(1));
  f.z_member = false;  // constant e_flat need not satisfy the identifications
  return f;
}

Poly inner_product(const VectorField& f, const VectorField& g) {
  if (f.level != g.level) throw SystemError("inner product level mismatch");
  Poly acc(f.comp[0].dim());
  for (int i = 0; i < f.n_dim; ++i) {
    if (f.comp[i].is_zero() || g.comp[i].is_zero()) continue;
    acc += f.comp[i].conjugated() * g.comp[i];
  }
  return acc;
}

VectorField module_action(const SelfSimilarSystem& sys, const Poly& a, const VectorField& f,
                          const Poly& a2) {
  VectorField out = f;
  const int n = sys.branch_count();
  for (int i = 0; i < f.n_dim; ++i) {
    Poly left = a.composed_with(flat_map(sys, flat_digits(i, n, f.level)));
    out.comp[i] = left * f.comp[i] * a2;
  }
  return out;
}

bool check_membership(const LevelStructure& ls, const VectorField& f, double tol, double* defect) {
  double worst = 0;
  for (const auto& fiber : ls.fibers) {
    Eigen::VectorXcd vals = f.eval(fiber.c);
    double scale = std::max(1.0, vals.cwiseAbs().maxCoeff());
    for (const auto& g : fiber.groups) {
      for (size_t a = 1; a < g.size(); ++a)
        worst = std::max(worst, std::abs(vals(g[a]) - vals(g[0])) / scale);
    }
  }
  if (defect) *defect = worst;
  return worst <= tol;
}

// bump_c: polynomial equal to 1 at c and 0 at the other points; product of
// the linear forms <z - p, c - p> normalized at c.
static Poly bump_at(int dim, const QVec& c, const std::vector<QVec>& others) {
  Poly out = Poly::constant(dim, Cplx(1));
  for (const auto& p : others) {
    Poly form(dim);
    double norm = 0;
    for (int i = 0; i < dim; ++i) {
      double diff = c[i].to_double() - p[i].to_double();
      Poly zi = Poly::coordinate(dim, i) - Poly::constant(dim, Cplx(p[i].to_double()));
      zi *= Cplx(diff);
      form += zi;
      norm += diff * diff;
    }
    // form(c) = |c-p|^2 = norm, form(p) = 0 exactly
    out = out * form;
    out *= Cplx(1.0 / norm);
  }
  return out;
}

VectorField z_project(const SelfSimilarSystem& sys, const LevelStructure& ls, VectorField f) {
  const int dim = sys.dimension;
  for (size_t fi = 0; fi < ls.fibers.size(); ++fi) {
    const LevelFiber& fiber = ls.fibers[fi];
    std::vector<QVec> others;
    for (size_t fj = 0; fj < ls.fibers.size(); ++fj)
      if (fj != fi) others.push_back(ls.fibers[fj].c);
    Poly bump = bump_at(dim, fiber.c, others);
    std::vector<double> cd = qvec_to_double(fiber.c);
    for (const auto& g : fiber.groups) {
      if (g.size() < 2) continue;
      Cplx avg(0);
      for (int idx : g) avg += f.comp[idx].eval(cd);
      avg /= static_cast<double>(g.size());
      for (int idx : g) {
        Cplx delta = avg - f.comp[idx].eval(cd);
        if (delta != Cplx(0)) f.comp[idx] += bump * delta;
      }
    }
  }
  f.z_member = true;
  return f;
}

FiberBasis fiber_basis_local(int total_dim, const std::vector<std::vector<int>>& groups) {
  FiberBasis b;
  b.groups = groups;
  std::sort(b.groups.begin(), b.groups.end(),
            [](const auto& x, const auto& y) { return x.front() < y.front(); });
  b.w = static_cast<int>(b.groups.size());
  for (const auto& g : b.groups) {
    Eigen::VectorXcd u = Eigen::VectorXcd::Zero(total_dim);
    double entry = 1.0 / std::sqrt(static_cast<double>(g.size()));
    for (int idx : g) u(idx) = entry;
    b.vectors.push_back(u);
  }
  return b;
}

FiberBasis fiber_basis(const SelfSimilarSystem& sys, const MembershipOracle& oracle, const QVec& c,
                       int level) {
  const int n = sys.branch_count();
  const long total = pow_long(n, level);
  // group the flat indices by the exact image point of c
  std::vector<std::vector<int>> groups;
  std::vector<QVec> images;
  for (long fidx = 0; fidx < total; ++fidx) {
    QVec p = apply_flat(sys, flat_digits(fidx, n, level), c);
    bool found = false;
    for (size_t g = 0; g < images.size() && !found; ++g)
      if (qvec_eq(images[g], p)) {
        groups[g].push_back(static_cast<int>(fidx));
        found = true;
      }
    if (!found) {
      images.push_back(std::move(p));
      groups.push_back({static_cast<int>(fidx)});
    }
  }
  FiberBasis b = fiber_basis_local(static_cast<int>(total), groups);
  b.c = c;
  return b;
}

MatrixField rank_one(const SelfSimilarSystem& sys, const VectorField& f, const VectorField& g) {
  if (f.level != g.level) throw SystemError("rank-one level mismatch");
  if (!f.z_member || !g.z_member)
    throw SystemError("rank-one arguments must carry the Z-membership flag");
  MatrixField m = MatrixField::zero(sys, f.level);
  for (int i = 0; i < f.n_dim; ++i) {
    if (f.comp[i].is_zero()) continue;
    for (int j = 0; j < g.n_dim; ++j) {
      if (g.comp[j].is_zero()) continue;
      m.at(i, j) = f.comp[i] * g.comp[j].conjugated();
    }
  }
  m.d_member_flag = true;
  return m;
}

VectorField lift(const SelfSimilarSystem& sys, const VectorField& f, const VectorField& g) {
  const int n = sys.branch_count();
  VectorField out = VectorField::zero(sys, f.level + g.level);
  for (int gf = 0; gf < g.n_dim; ++gf) {
    AffineMap w = flat_map(sys, flat_digits(gf, n, g.level));
    for (int ff = 0; ff < f.n_dim; ++ff) {
      if (f.comp[ff].is_zero() || g.comp[gf].is_zero()) continue;
      out.comp[ff + f.n_dim * gf] = f.comp[ff].composed_with(w) * g.comp[gf];
    }
  }
  out.z_member = f.z_member && g.z_member;
  return out;
}

VectorField apply_matrix(const MatrixField& m, const VectorField& f) {
  if (m.level != f.level) throw SystemError("matrix/vector level mismatch");
  VectorField out = f;
  for (int i = 0; i < m.n_dim; ++i) {
    Poly acc(f.comp[0].dim());
    for (int j = 0; j < m.n_dim; ++j) {
      if (m.at(i, j).is_zero() || f.comp[j].is_zero()) continue;
      acc += m.at(i, j) * f.comp[j];
    }
    out.comp[i] = acc;
  }
  out.z_member = false;
  return out;
}

}  // namespace selfsim
