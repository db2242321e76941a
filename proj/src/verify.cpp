#include "selfsim/verify.hpp"

#include "selfsim/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace selfsim {

namespace {

long pow_long(long base, int e) {
  long r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

bool qvec_less(const QVec& x, const QVec& y) { return qvec_cmp(x, y) < 0; }

bool point_in(const std::vector<QVec>& sorted, const QVec& p) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), p, qvec_less);
  return it != sorted.end() && qvec_eq(*it, p);
}

struct SuiteContext {
  const SelfSimilarSystem& sys;
  const VerifyConfig& cfg;
  MembershipOracle oracle;
  SingularityReport report;
  std::vector<LevelStructure> levels;  // [r] = structure of gamma^r
  std::vector<QVec> sample_points;     // coarse grid for pointwise checks
  int level_cap;

  SuiteContext(const SelfSimilarSystem& s, const VerifyConfig& c)
      : sys(s), cfg(c), oracle(s) {
    report = check_assumption_b(sys, oracle, cfg.postcritical_depth,
                                std::min(cfg.grid_depth, 6));
    level_cap = std::min(cfg.max_level, sys.branch_count() == 2 ? 3 : 2);
    for (int r = 0; r <= std::max(level_cap, 2) + 1; ++r)
      levels.push_back(level_structure(sys, oracle, r));
    AttractorGrid g = generate_grid(sys, std::min(4, cfg.grid_depth));
    sample_points = g.points;
  }
};

void push(std::vector<PropertyResult>& out, const std::string& name, double defect, double tol,
          const std::string& note = "") {
  out.push_back({name, defect, tol, defect <= tol, note});
}

// ---------------------------------------------------------------- singularity

void suite_singularity(SuiteContext& ctx, std::vector<PropertyResult>& out) {
  const auto& sys = ctx.sys;
  const auto& cfg = ctx.cfg;

  {  // grid nesting and h(grid(m+1)) = grid(m)
    int m = std::min(4, cfg.grid_depth);
    AttractorGrid a = generate_grid(sys, m), b = generate_grid(sys, m + 1);
    double defect = 0;
    if (a.points.size() > b.points.size()) defect += 1;
    for (const auto& p : a.points)
      if (b.find(p) < 0) defect += 1;
    std::vector<QVec> h_image;
    for (const auto& p : b.points) h_image.push_back(left_inverse(sys, ctx.oracle, p));
    h_image = sort_dedup_points(std::move(h_image));
    if (h_image.size() != a.points.size()) defect += 1;
    for (const auto& p : h_image)
      if (a.find(p) < 0) defect += 1;
    push(out, "grid-nesting-and-h-image", defect, 0, "m=" + std::to_string(m));
  }

  {  // weights sum to one exactly
    double defect = 0;
    for (int m = 0; m <= 5; ++m) {
      DiscreteMeasure mu = hutchinson_measure(sys, m);
      Rational sum(0);
      for (const auto& w : mu.weights) sum += w;
      if (sum != Rational(1)) defect += 1;
    }
    push(out, "hutchinson-weights-sum-1", defect, 0);
  }

  {  // invariance defect decreases monotonically for monomials of degree <= 2
    double defect = 0;
    std::vector<std::vector<int>> monomials;
    for (int ex = 0; ex <= 2; ++ex)
      for (int ey = 0; ey <= (sys.dimension > 1 ? 2 - ex : 0); ++ey) {
        if (ex + ey == 0) continue;
        std::vector<int> e{ex};
        if (sys.dimension > 1) e.push_back(ey);
        monomials.push_back(e);
      }
    std::vector<DiscreteMeasure> mus;
    for (int m = 2; m <= 6; ++m) mus.push_back(hutchinson_measure(sys, m));
    for (const auto& e : monomials) {
      std::vector<Quad> integral;
      for (const auto& mu : mus) integral.push_back(integrate_monomial(mu, e));
      for (size_t i = 0; i + 2 < integral.size(); ++i) {
        Quad d0 = (integral[i + 1] - integral[i]).abs();
        Quad d1 = (integral[i + 2] - integral[i + 1]).abs();
        if (d1 > d0) defect += 1;
      }
    }
    push(out, "hutchinson-invariance-defect-monotone", defect, 0);
  }

  {  // h maps O_{b,n+1} onto O_{b,n}
    double defect = 0;
    int nmax = sys.branch_count() == 2 ? 5 : 4;
    for (const auto& bd : ctx.report.branches) {
      for (int n = 0; n < nmax; ++n) {
        auto lo = orbit_set(sys, ctx.oracle, bd.point, n);
        auto hi = orbit_set(sys, ctx.oracle, bd.point, n + 1);
        std::vector<QVec> mapped;
        for (const auto& p : hi.points) mapped.push_back(left_inverse(sys, ctx.oracle, p));
        mapped = sort_dedup_points(std::move(mapped));
        if (mapped.size() != lo.points.size()) defect += 1;
        for (const auto& p : mapped)
          if (!point_in(lo.points, p)) defect += 1;
      }
    }
    push(out, "orbit-h-consistency", defect, 0);
  }

  {  // |O_{b,n}| <= N^n; tent matches the closed form (2k-1)/2^{n+1}
    double defect = 0;
    for (const auto& bd : ctx.report.branches)
      for (int n = 0; n <= 4; ++n) {
        auto o = orbit_set(sys, ctx.oracle, bd.point, n);
        if (static_cast<long>(o.points.size()) > pow_long(sys.branch_count(), n)) defect += 1;
        if (sys.name == "tent") {
          if (static_cast<long>(o.points.size()) != pow_long(2, n)) defect += 1;
          for (long k = 1; k <= pow_long(2, n); ++k) {
            QVec expect{Quad(Rational(2 * k - 1, pow_long(2, n + 1)))};
            if (!point_in(o.points, expect)) defect += 1;
          }
        }
      }
    push(out, "orbit-size-and-closed-form", defect, 0);
  }

  {  // lemma formula for B_{gamma^n} against the brute-force oracle
    double defect = 0;
    for (int n = 1; n <= 3; ++n) {
      auto direct = iterated_branch_points_direct(sys, ctx.oracle, n);
      auto formula = ctx.report.branches.empty() ? std::vector<QVec>{}
                                                 : iterated_branch_points(sys, ctx.oracle, n);
      if (direct.points.size() != formula.size()) defect += 1;
      for (const auto& p : formula)
        if (!point_in(direct.points, p)) defect += 1;
      if (!direct.unique_slot) defect += 1;
    }
    push(out, "iterated-branch-formula-vs-direct", defect, 0, "n<=3");
  }

  {  // C_{gamma^n} grows with n
    double defect = 0;
    auto c1 = iterated_branch_points_direct(sys, ctx.oracle, 1).values;
    auto c2 = iterated_branch_points_direct(sys, ctx.oracle, 2).values;
    auto c3 = iterated_branch_points_direct(sys, ctx.oracle, 3).values;
    for (const auto& p : c1)
      if (!point_in(c2, p)) defect += 1;
    for (const auto& p : c2)
      if (!point_in(c3, p)) defect += 1;
    push(out, "branch-values-monotone-in-level", defect, 0);
  }

  {  // label sets partition the word alphabet over each branch value
    double defect = 0;
    for (int lvl = 1; lvl <= 2; ++lvl) {
      for (const auto& fiber : ctx.levels[lvl].fibers) {
        long total = 0;
        for (const auto& g : fiber.groups) total += static_cast<long>(g.size());
        if (total != pow_long(sys.branch_count(), lvl)) defect += 1;
      }
    }
    push(out, "label-sets-partition", defect, 0);
  }

  {  // certified contraction constants on random exact pairs
    double defect = 0;
    FieldRng rng(cfg.rng_seed ^ 0x5151);
    Quad c2 = sys.contraction_upper * sys.contraction_upper;
    Quad l2 = sys.contraction_lower * sys.contraction_lower;
    for (int trial = 0; trial < cfg.n_random; ++trial) {
      QVec x(sys.dimension), y(sys.dimension);
      for (int i = 0; i < sys.dimension; ++i) {
        x[i] = Quad(Rational(rng.uniform(-64, 64), 64));
        y[i] = Quad(Rational(rng.uniform(-64, 64), 64));
      }
      Quad d2 = qvec_dist2(x, y);
      for (int j = 1; j <= sys.branch_count(); ++j) {
        Quad im2 = qvec_dist2(sys.branch(j)(x), sys.branch(j)(y));
        if (im2 > c2 * d2) defect += 1;
        if (im2 < l2 * d2) defect += 1;
      }
    }
    push(out, "contraction-certificates", defect, 0);
  }
}

// ------------------------------------------------------------------ bimodule

void suite_bimodule(SuiteContext& ctx, std::vector<PropertyResult>& out) {
  const auto& sys = ctx.sys;
  const auto& cfg = ctx.cfg;
  FieldRng rng(cfg.rng_seed ^ 0xb1);

  {  // orthonormality of fiber bases at branch values and a generic point
    double defect = 0;
    for (int lvl = 1; lvl <= 2; ++lvl) {
      std::vector<QVec> cs;
      for (const auto& f : ctx.levels[lvl].fibers) cs.push_back(f.c);
      cs.push_back(sys.seed);
      for (const auto& c : cs) {
        FiberBasis b = fiber_basis(sys, ctx.oracle, c, lvl);
        for (int i = 0; i < b.w; ++i)
          for (int j = 0; j < b.w; ++j) {
            Cplx ip = b.vectors[i].dot(b.vectors[j]);
            defect = std::max(defect, std::abs(ip - (i == j ? Cplx(1) : Cplx(0))));
          }
      }
    }
    push(out, "fiber-basis-orthonormal", defect, ctx.cfg.tol_pt);
  }

  {  // (f|f) >= 0 pointwise
    double defect = 0;
    for (int trial = 0; trial < cfg.n_random; ++trial) {
      VectorField f = random_z_field(sys, ctx.levels[1], 1, rng);
      Poly ip = inner_product(f, f);
      for (const auto& p : ctx.sample_points) {
        Cplx v = ip.eval(p);
        defect = std::max(defect, std::max(-v.real(), std::abs(v.imag())));
      }
    }
    push(out, "inner-product-positive", defect, ctx.cfg.tol_alg);
  }

  {  // (f a'|g a')_A = conj(a') (f|g)_A a'
    double defect = 0;
    Poly one = Poly::constant(sys.dimension, Cplx(1));
    for (int trial = 0; trial < cfg.n_random; ++trial) {
      VectorField f = random_z_field(sys, ctx.levels[1], 1, rng);
      VectorField g = random_z_field(sys, ctx.levels[1], 1, rng);
      Poly a2 = random_poly(rng, sys.dimension, 2);
      Poly lhs = inner_product(module_action(sys, one, f, a2), module_action(sys, one, g, a2));
      Poly rhs = a2.conjugated() * inner_product(f, g) * a2;
      double scale = 1 + std::max(lhs.sum_coeff_abs(), rhs.sum_coeff_abs());
      defect = std::max(defect, lhs.max_coeff_diff(rhs) / scale);
    }
    push(out, "module-action-inner-product-axiom", defect, ctx.cfg.tol_pt);
  }

  {  // the two-sided action preserves the identification equations
    double defect = 0;
    for (int lvl = 1; lvl <= 2; ++lvl)
      for (int trial = 0; trial < cfg.n_random / 2; ++trial) {
        VectorField f = random_z_field(sys, ctx.levels[lvl], lvl, rng);
        Poly a = random_poly(rng, sys.dimension, 2);
        Poly a2 = random_poly(rng, sys.dimension, 2);
        VectorField acted = module_action(sys, a, f, a2);
        double d = 0;
        check_membership(ctx.levels[lvl], acted, ctx.cfg.tol_alg, &d);
        defect = std::max(defect, d);
      }
    push(out, "module-action-preserves-z", defect, ctx.cfg.tol_alg);
  }

  {  // rank-one calculus
    double defect = 0;
    for (int trial = 0; trial < cfg.n_random / 2; ++trial) {
      VectorField f = random_z_field(sys, ctx.levels[1], 1, rng);
      VectorField g = random_z_field(sys, ctx.levels[1], 1, rng);
      VectorField u = random_z_field(sys, ctx.levels[1], 1, rng);
      VectorField v = random_z_field(sys, ctx.levels[1], 1, rng);
      MatrixField tfg = rank_one(sys, f, g);
      // adjoint
      MatrixField adj = tfg.adjoint();
      MatrixField tgf = rank_one(sys, g, f);
      for (int i = 0; i < adj.n_dim; ++i)
        for (int j = 0; j < adj.n_dim; ++j)
          defect = std::max(defect, adj.at(i, j).max_coeff_diff(tgf.at(i, j)));
      // composition: theta_{f,g} theta_{u,v} = theta_{f (g|u)_A, v}
      MatrixField prod = mf_mul(tfg, rank_one(sys, u, v));
      Poly gu = inner_product(g, u);
      VectorField fgu = f;
      for (auto& comp : fgu.comp) comp = comp * gu;
      MatrixField rhs = rank_one(sys, fgu, v);
      for (int i = 0; i < prod.n_dim; ++i)
        for (int j = 0; j < prod.n_dim; ++j) {
          double scale = 1 + rhs.at(i, j).sum_coeff_abs();
          defect = std::max(defect, prod.at(i, j).max_coeff_diff(rhs.at(i, j)) / scale);
        }
    }
    push(out, "rank-one-calculus", defect, ctx.cfg.tol_pt);
  }

  {  // membership flags genuine violations
    double missed = 0;
    if (!ctx.levels[1].fibers.empty()) {
      for (int trial = 0; trial < 10; ++trial) {
        VectorField f = random_z_field(sys, ctx.levels[1], 1, rng);
        const LevelFiber& fiber = ctx.levels[1].fibers[0];
        const auto* grp = &fiber.groups[0];
        for (const auto& g : fiber.groups)
          if (g.size() >= 2) grp = &g;
        VectorField broken = f;
        Poly bump = Poly::constant(sys.dimension, Cplx(1e-3));
        broken.comp[(*grp)[0]] += bump;
        if (check_membership(ctx.levels[1], broken, ctx.cfg.tol_pt)) missed += 1;
        if (!check_membership(ctx.levels[1], f, ctx.cfg.tol_pt)) missed += 1;
      }
    }
    push(out, "membership-detects-violations", missed, 0);
  }

  {  // tensor lift: associativity and the interior inner-product identity
    double defect = 0;
    Poly one = Poly::constant(sys.dimension, Cplx(1));
    for (int trial = 0; trial < cfg.n_random / 2; ++trial) {
      VectorField f = random_z_field(sys, ctx.levels[1], 1, rng, 1);
      VectorField g = random_z_field(sys, ctx.levels[1], 1, rng, 1);
      VectorField h = random_z_field(sys, ctx.levels[1], 1, rng, 1);
      VectorField ab = lift(sys, lift(sys, f, g), h);
      VectorField ba = lift(sys, f, lift(sys, g, h));
      for (int i = 0; i < ab.n_dim; ++i)
        defect = std::max(defect, ab.comp[i].max_coeff_diff(ba.comp[i]));
      // (f (x) g | f' (x) g') = (g | (f|f')g')
      VectorField f2 = random_z_field(sys, ctx.levels[1], 1, rng, 1);
      VectorField g2 = random_z_field(sys, ctx.levels[1], 1, rng, 1);
      Poly lhs = inner_product(lift(sys, f, g), lift(sys, f2, g2));
      Poly rhs = inner_product(g, module_action(sys, inner_product(f, f2), g2, one));
      double scale = 1 + std::max(lhs.sum_coeff_abs(), rhs.sum_coeff_abs());
      defect = std::max(defect, lhs.max_coeff_diff(rhs) / scale);
      // lift of constants is constant
      VectorField c1 = VectorField::zero(sys, 1), c2 = VectorField::zero(sys, 1);
      for (auto& comp : c1.comp) comp = Poly::constant(sys.dimension, Cplx(0.5));
      for (auto& comp : c2.comp) comp = Poly::constant(sys.dimension, Cplx(2.0));
      c1.z_member = c2.z_member = true;
      VectorField lc = lift(sys, c1, c2);
      for (const auto& comp : lc.comp)
        defect = std::max(defect, comp.max_coeff_diff(Poly::constant(sys.dimension, Cplx(1.0))));
    }
    push(out, "tensor-lift-consistency", defect, ctx.cfg.tol_pt);
  }
}

// ------------------------------------------------------------------ core-rep

void suite_core_rep(SuiteContext& ctx, std::vector<PropertyResult>& out) {
  const auto& sys = ctx.sys;
  const auto& cfg = ctx.cfg;
  FieldRng rng(cfg.rng_seed ^ 0xc0);

  {  // rank-ones of Z members satisfy the D equations; perturbations fail
    double defect = 0;
    double missed = 0;
    for (int lvl = 1; lvl <= 2; ++lvl) {
      if (ctx.levels[lvl].fibers.empty()) continue;
      for (int trial = 0; trial < 8; ++trial) {
        MatrixField m = random_compact(sys, ctx.levels[lvl], lvl, rng);
        double d = 0;
        d_membership(ctx.levels[lvl], m, ctx.cfg.tol_pt, &d);
        defect = std::max(defect, d);
        MatrixField broken = m;
        const auto& fiber = ctx.levels[lvl].fibers[0];
        const auto* grp = &fiber.groups[0];
        for (const auto& g : fiber.groups)
          if (g.size() >= 2) grp = &g;
        broken.at((*grp)[0], 0) += Poly::constant(sys.dimension, Cplx(1e-3));
        if (d_membership(ctx.levels[lvl], broken, ctx.cfg.tol_pt)) missed += 1;
      }
    }
    push(out, "d-membership-rank-ones", defect + missed, ctx.cfg.tol_pt);
  }

  {  // pi is multiplicative and *-preserving
    double defect = 0;
    double adj_defect = 0;
    for (int trial = 0; trial < cfg.n_random / 2; ++trial) {
      GradedCoreElement s = random_graded(sys, ctx.levels, ctx.level_cap, rng);
      GradedCoreElement t = random_graded(sys, ctx.levels, ctx.level_cap, rng);
      HomomorphismCheck hc = homomorphism_defect(sys, s, t, ctx.sample_points);
      defect = std::max(defect, hc.defect_bound / hc.scale_lower);
      MatrixField lhs = pi(sys, graded_adjoint(t));
      MatrixField rhs = pi(sys, t).adjoint();
      for (int i = 0; i < lhs.n_dim; ++i)
        for (int j = 0; j < lhs.n_dim; ++j)
          adj_defect = std::max(adj_defect, lhs.at(i, j).max_coeff_diff(rhs.at(i, j)));
    }
    push(out, "pi-homomorphism", defect, ctx.cfg.tol_alg);
    push(out, "pi-adjoint-exact", adj_defect, 0);
  }

  {  // commuting diagram: pad then represent = represent then embed
    double defect = 0;
    for (int trial = 0; trial < cfg.n_random / 2; ++trial) {
      int lvl = std::min(2, ctx.level_cap);
      GradedCoreElement t = random_graded(sys, ctx.levels, lvl, rng);
      MatrixField a = pi(sys, graded_pad(sys, t, lvl + 1));
      MatrixField b = embed(sys, pi(sys, t), lvl + 1);
      for (int i = 0; i < a.n_dim; ++i)
        for (int j = 0; j < a.n_dim; ++j) {
          double scale = 1 + b.at(i, j).sum_coeff_abs();
          defect = std::max(defect, a.at(i, j).max_coeff_diff(b.at(i, j)) / scale);
        }
    }
    push(out, "pi-commuting-diagram", defect, ctx.cfg.tol_pt);
  }

  {  // pi(T) preserves Z
    double defect = 0;
    for (int trial = 0; trial < cfg.n_random / 2; ++trial) {
      int lvl = std::min(2, ctx.level_cap);
      GradedCoreElement t = random_graded(sys, ctx.levels, lvl, rng);
      VectorField f = random_z_field(sys, ctx.levels[lvl], lvl, rng);
      VectorField image = apply_matrix(pi(sys, t), f);
      double d = 0;
      check_membership(ctx.levels[lvl], image, ctx.cfg.tol_alg, &d);
      defect = std::max(defect, d);
    }
    push(out, "pi-image-preserves-z", defect, ctx.cfg.tol_alg);
  }

  {  // compact absorption: pushed-up components are honest compacts with the
     // same representation, and the absorbed level-n matrix dies on B
    double defect = 0;
    if (!ctx.report.branches.empty()) {
      std::vector<QVec> b_points = ctx.report.branch_points();
      Poly v = separating_witness(sys, b_points, {sys.seed});
      for (int trial = 0; trial < 6; ++trial) {
        int lvl = std::min(1, ctx.level_cap);
        GradedCoreElement t = random_graded(sys, ctx.levels, lvl, rng);
        GradedCoreElement absorbed = compact_absorption(sys, b_points, t, v, 1e-6);
        for (int r = 1; r <= absorbed.level; ++r) {
          double d = 0;
          d_membership(ctx.levels[r], absorbed.comp[r], ctx.cfg.tol_alg, &d);
          defect = std::max(defect, d);
        }
        // same operator: compare against the scalar-multiplied original
        GradedCoreElement scaled = t;
        for (auto& comp : scaled.comp) comp = mf_mul_scalar_field(comp, v);
        MatrixField a = pi(sys, graded_pad(sys, scaled, absorbed.level));
        MatrixField b = pi(sys, absorbed);
        for (int i = 0; i < a.n_dim; ++i)
          for (int j = 0; j < a.n_dim; ++j) {
            double scale = 1 + a.at(i, j).sum_coeff_abs();
            defect = std::max(defect, a.at(i, j).max_coeff_diff(b.at(i, j)) / scale);
          }
        // a pure top compact that also lies one level up dies at branch points
        MatrixField top = mf_mul_scalar_field(t.comp[t.level], v);
        for (const auto& bp : b_points)
          defect = std::max(defect,
                            top.eval(bp).cwiseAbs().maxCoeff() / (1 + top.sum_coeff_abs()));
      }
    }
    push(out, "compact-absorption", defect, ctx.cfg.tol_alg);
  }

  {  // sup norms stabilize under grid refinement (deterministic elements)
    double worst_rel = 0;
    double mono = 0;
    int m = sys.branch_count() == 2 ? 10 : 7;
    Poly x0 = Poly::coordinate(sys.dimension, 0);
    Poly a = Poly::constant(sys.dimension, Cplx(1)) + x0 * Cplx(0.5);
    VectorField f = VectorField::zero(sys, 1);
    for (auto& comp : f.comp) comp = a;
    f.z_member = true;
    GradedCoreElement t = GradedCoreElement::zero(sys, 1);
    t.comp[0] = MatrixField::scalar(sys, a);
    t.comp[1] = rank_one(sys, f, f);
    MatrixField rep = pi(sys, t);
    double n0 = sup_norm(sys, rep, m);
    double n1 = sup_norm(sys, rep, m + 2);
    mono = std::max(mono, n0 - n1);  // nested grids: refinement cannot shrink
    worst_rel = std::max(worst_rel, (n1 - n0) / (1 + n0));
    push(out, "sup-norm-monotone", std::max(mono, 0.0), 1e-12);
    push(out, "sup-norm-stabilizes", worst_rel, 1e-3,
         "m=" + std::to_string(m) + " vs m+2");
  }

  {  // fiber algebras: matrix-unit relations and reconstruction
    double defect = 0;
    for (const auto& fiber : ctx.levels[1].fibers) {
      FiberAlgebra fa = fiber_algebra(sys, ctx.oracle, fiber.c, 1);
      for (int i = 0; i < fa.w; ++i)
        for (int j = 0; j < fa.w; ++j)
          for (int k = 0; k < fa.w; ++k)
            for (int l = 0; l < fa.w; ++l) {
              Eigen::MatrixXcd prod = fa.units[i * fa.w + j] * fa.units[k * fa.w + l];
              Eigen::MatrixXcd expect = (j == k)
                                            ? fa.units[i * fa.w + l]
                                            : Eigen::MatrixXcd::Zero(prod.rows(), prod.cols());
              defect = std::max(defect, (prod - expect).cwiseAbs().maxCoeff());
            }
      // a random D-member's fiber value is a combination of the units
      MatrixField m = random_compact(sys, ctx.levels[1], 1, rng);
      Eigen::MatrixXcd val = m.eval(fiber.c);
      FiberBasis basis = fiber_basis(sys, ctx.oracle, fiber.c, 1);
      Eigen::MatrixXcd recon = Eigen::MatrixXcd::Zero(val.rows(), val.cols());
      for (int i = 0; i < fa.w; ++i)
        for (int j = 0; j < fa.w; ++j) {
          Cplx lambda = basis.vectors[i].dot(val * basis.vectors[j]);
          recon += lambda * fa.units[i * fa.w + j];
        }
      defect = std::max(defect, (recon - val).cwiseAbs().maxCoeff() /
                                    (1 + val.cwiseAbs().maxCoeff()));
    }
    push(out, "fiber-algebra-units", defect, ctx.cfg.tol_alg);
  }
}

// -------------------------------------------------------------------- ideals

void suite_ideals(SuiteContext& ctx, std::vector<PropertyResult>& out) {
  const auto& sys = ctx.sys;
  const auto& cfg = ctx.cfg;
  FieldRng rng(cfg.rng_seed ^ 0x1dea);

  std::vector<TraceSpec> specs;
  for (const auto& bd : ctx.report.branches)
    for (int n = 0; n <= 2; ++n) specs.push_back(TraceSpec::discrete(bd.point, n));
  specs.push_back(TraceSpec::hutchinson(cfg.grid_depth));

  {  // trace axioms
    double lin = 0, pos = 0, tra = 0, nrm = 0;
    int lvl = std::min(2, ctx.level_cap);
    GradedCoreElement unit = GradedCoreElement::unit(sys, lvl);
    for (int trial = 0; trial < cfg.n_random / 2; ++trial) {
      GradedCoreElement t = random_graded(sys, ctx.levels, lvl, rng);
      GradedCoreElement s = random_graded(sys, ctx.levels, lvl, rng);
      Cplx alpha(0.375, -0.25);
      for (const auto& spec : specs) {
        Cplx vt = trace_eval(sys, spec, t);
        Cplx vs = trace_eval(sys, spec, s);
        Cplx vsum = trace_eval(sys, spec, graded_add(graded_scale(t, alpha), s));
        lin = std::max(lin, std::abs(vsum - (alpha * vt + vs)) / (1 + std::abs(vsum)));
        Cplx vpos = trace_eval(sys, spec, graded_mul(sys, graded_adjoint(t), t));
        pos = std::max(pos, std::max(-vpos.real(), std::abs(vpos.imag())) / (1 + std::abs(vpos)));
        Cplx vts = trace_eval(sys, spec, graded_mul(sys, t, s));
        Cplx vst = trace_eval(sys, spec, graded_mul(sys, s, t));
        tra = std::max(tra, std::abs(vts - vst) / (1 + std::abs(vts)));
        nrm = std::max(nrm, std::abs(trace_eval(sys, spec, unit) - Cplx(1)));
      }
    }
    push(out, "trace-linearity", lin, ctx.cfg.tol_pt);
    push(out, "trace-positivity", pos, ctx.cfg.tol_alg);
    push(out, "trace-tracial", tra, ctx.cfg.tol_alg);
    push(out, "trace-normalization", nrm, ctx.cfg.tol_pt);
  }

  {  // tau^{(b,n)} kills pure compacts above level n, by construction exactly
    double defect = 0;
    for (const auto& bd : ctx.report.branches) {
      int n = 1;
      MatrixField high = random_compact(sys, ctx.levels[n + 1], n + 1, rng);
      GradedCoreElement t = GradedCoreElement::from_component(sys, high, n + 1);
      Cplx v = trace_eval(sys, TraceSpec::discrete(bd.point, n), t);
      defect = std::max(defect, std::abs(v));
    }
    push(out, "trace-vanishes-above-level", defect, 0);
  }

  {  // primitive descriptors give pairwise distinct closed sets of the menu
    double defect = 0;
    auto prims = primitive_ideals(sys, ctx.oracle, ctx.report, cfg.max_ideal_level);
    std::vector<ClosedSet> sets;
    for (const auto& d : prims) sets.push_back(closed_set(sys, ctx.oracle, d));
    for (size_t i = 0; i < sets.size(); ++i)
      for (size_t j = i + 1; j < sets.size(); ++j) {
        if (sets[i].kind != sets[j].kind) continue;
        if (sets[i].kind == ClosedSet::Points) {
          if (sets[i].points.size() == sets[j].points.size()) {
            bool same = true;
            for (size_t k = 0; k < sets[i].points.size(); ++k)
              same = same && qvec_eq(sets[i].points[k], sets[j].points[k]);
            if (same) defect += 1;
          }
        } else {
          defect += 1;  // two symbolic sets of the same kind coincide
        }
      }
    push(out, "closed-sets-distinct", defect, 0);
  }

  {  // Rieffel descent: F_k = O_{b,n-k}, gamma-images and h-images line up
    double defect = 0;
    for (const auto& bd : ctx.report.branches) {
      IdealTag tag{bd.point, 2};
      auto levels = descent_levels(sys, ctx.oracle, tag);
      for (size_t k = 0; k + 1 < levels.size(); ++k) {
        if (levels[k + 1].empty()) break;
        // union of branch images of F_{k+1} recovers F_k
        std::vector<QVec> images;
        for (const auto& p : levels[k + 1])
          for (int j = 1; j <= sys.branch_count(); ++j) images.push_back(sys.branch(j)(p));
        images = sort_dedup_points(std::move(images));
        if (images.size() != levels[k].size()) defect += 1;
        for (const auto& p : images)
          if (!point_in(levels[k], p)) defect += 1;
        // h maps F_k (minus branch points) into F_{k+1}
        for (const auto& p : levels[k]) {
          if (point_in(ctx.report.branch_points(), p)) continue;
          if (!point_in(levels[k + 1], left_inverse(sys, ctx.oracle, p))) defect += 1;
        }
      }
    }
    push(out, "rieffel-descent-consistency", defect, 0);
  }

  {  // Hutchinson trace is stable under padding by a zero component
    double defect = 0;
    TraceSpec hutch = TraceSpec::hutchinson(cfg.grid_depth);
    for (int trial = 0; trial < cfg.n_random; ++trial) {
      int lvl = std::min(2, ctx.level_cap);
      GradedCoreElement t = random_graded(sys, ctx.levels, lvl, rng);
      Cplx a = trace_eval(sys, hutch, t);
      Cplx b = trace_eval(sys, hutch, graded_pad(sys, t, lvl + 1));
      defect = std::max(defect, std::abs(a - b) / (1 + std::abs(a)));
    }
    push(out, "hutchinson-level-consistency", defect, ctx.cfg.tol_alg);
  }

  {  // kernels of distinct discrete traces are separated by witnesses
    double worst_margin = ctx.report.branches.empty() ? 1.0 : 0.0;
    double leak = 0;
    std::vector<IdealTag> tags;
    for (const auto& bd : ctx.report.branches)
      for (int n = 0; n <= 2; ++n) tags.push_back({bd.point, n});
    bool all_separated = true;
    for (size_t a = 0; a < tags.size(); ++a)
      for (size_t b = 0; b < tags.size(); ++b) {
        if (a == b) continue;
        auto oa = orbit_set(sys, ctx.oracle, tags[a].b, tags[a].n).points;
        auto ob = orbit_set(sys, ctx.oracle, tags[b].b, tags[b].n).points;
        Poly w;
        try {
          w = separating_witness(sys, oa, ob);
        } catch (const SystemError&) {
          all_separated = false;  // overlapping orbits: reported, not separated
          continue;
        }
        GradedCoreElement t = GradedCoreElement::zero(sys, 0);
        t.comp[0] = MatrixField::scalar(sys, w);
        GradedCoreElement tt = graded_mul(sys, graded_adjoint(t), t);
        double kernel_side = std::abs(trace_eval(sys, TraceSpec::discrete(tags[a].b, tags[a].n), tt));
        double other_side = std::abs(trace_eval(sys, TraceSpec::discrete(tags[b].b, tags[b].n), tt));
        leak = std::max(leak, kernel_side);
        worst_margin = worst_margin == 0.0 ? other_side : std::min(worst_margin, other_side);
      }
    bool pass = leak <= ctx.cfg.tol_alg && (tags.empty() || worst_margin > 1e-3) && all_separated;
    out.push_back({"kernel-separation", leak, ctx.cfg.tol_alg, pass,
                   tags.empty() ? "no branch points" :
                                  "min margin " + std::to_string(worst_margin)});
  }

  {  // hull-kernel closures in the truncated primitive space
    double defect = 0;
    auto prims = primitive_ideals(sys, ctx.oracle, ctx.report, cfg.max_ideal_level);
    auto all = jacobson_closure({IdealDescriptor::zero()}, prims);
    if (all.size() != prims.size()) defect += 1;
    for (const auto& p : prims) {
      if (p.kind != IdealDescriptor::OrbitUnion) continue;
      auto cl = jacobson_closure({p}, prims);
      if (cl.size() != 1 || !(cl[0] == p)) defect += 1;
    }
    auto whole = jacobson_closure(prims, prims);
    if (whole.size() != prims.size()) defect += 1;
    push(out, "jacobson-closure", defect, 0);
  }

  {  // quotient dimensions
    double defect = 0;
    for (const auto& bd : ctx.report.branches)
      for (int n = 0; n <= 3; ++n) {
        long expect = pow_long(sys.branch_count(), 2 * n);
        if (quotient_dimension(sys, IdealDescriptor::orbit({{bd.point, n}})) != expect)
          defect += 1;
      }
    // joint evaluation rank at level 1 matches dim(M_1 (+) M_N) for the
    // meet of tags (b,0) and (b,1)
    if (!ctx.report.branches.empty()) {
      const QVec& b = ctx.report.branches[0].point;
      const int nd = sys.branch_count();
      const int cols = 1 + nd * nd;
      Eigen::MatrixXcd stack(3 * cols, cols);
      for (int row = 0; row < 3 * cols; ++row) {
        GradedCoreElement t = random_graded(sys, ctx.levels, 1, rng);
        Eigen::MatrixXcd block0 = t.comp[0].eval(b);  // 1x1
        Eigen::MatrixXcd block1 = pi(sys, t).eval(b);
        stack(row, 0) = block0(0, 0);
        for (int i = 0; i < nd; ++i)
          for (int j = 0; j < nd; ++j) stack(row, 1 + i * nd + j) = block1(i, j);
      }
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stack);
      int rank = 0;
      for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > 1e-8 * svd.singularValues()(0)) ++rank;
      long expect = quotient_dimension(
          sys, ideal_meet({IdealDescriptor::orbit({{b, 0}}), IdealDescriptor::orbit({{b, 1}})}));
      if (rank != expect) defect += 1;
    }
    push(out, "quotient-dimensions", defect, 0);
  }

  {  // the Hutchinson value ignores the block summation order
    double defect = 0;
    for (int trial = 0; trial < 6; ++trial) {
      GradedCoreElement t = random_graded(sys, ctx.levels, 1, rng);
      TraceSpec hutch = TraceSpec::hutchinson(cfg.grid_depth);
      Cplx v = trace_eval(sys, hutch, t);
      // conjugating pi by the constant block-reversal permutation preserves
      // the pointwise matrix trace
      DiscreteMeasure mu = hutchinson_measure(sys, std::max(0, cfg.grid_depth - t.level));
      MatrixField rep = pi(sys, t);
      Cplx w(0);
      long nl = pow_long(sys.branch_count(), t.level);
      for (size_t k = 0; k < mu.support.size(); ++k) {
        Eigen::MatrixXcd m = rep.eval(mu.support[k]);
        Cplx tr(0);
        for (int i = m.rows() - 1; i >= 0; --i) tr += m(i, i);
        w += tr * (mu.weights[k].get_d() / static_cast<double>(nl));
      }
      defect = std::max(defect, std::abs(v - w) / (1 + std::abs(v)));
    }
    push(out, "hutchinson-permutation-invariance", defect, ctx.cfg.tol_pt);
  }
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"singularity", "bimodule", "core-rep", "ideals"};
}

HomomorphismCheck homomorphism_defect(const SelfSimilarSystem& sys, const GradedCoreElement& s,
                                      const GradedCoreElement& t,
                                      const std::vector<QVec>& sample_points) {
  MatrixField lhs = pi(sys, graded_mul(sys, s, t));
  MatrixField rhs = mf_mul(pi(sys, s), pi(sys, t));
  HomomorphismCheck hc;
  for (int i = 0; i < lhs.n_dim; ++i)
    for (int j = 0; j < lhs.n_dim; ++j) {
      Poly diff = lhs.at(i, j) - rhs.at(i, j);
      hc.defect_bound = std::max(hc.defect_bound, diff.sum_coeff_abs());
    }
  double ns = max_abs_on_points(pi(sys, s), sample_points);
  double nt = max_abs_on_points(pi(sys, t), sample_points);
  hc.scale_lower = 1 + ns * nt;
  return hc;
}

double max_abs_on_points(const MatrixField& m, const std::vector<QVec>& points) {
  double best = 0;
  for (const auto& p : points) best = std::max(best, m.eval(p).cwiseAbs().maxCoeff());
  return best;
}

std::vector<PropertyResult> run_suite(const SelfSimilarSystem& sys, const std::string& suite,
                                      const VerifyConfig& cfg) {
  SuiteContext ctx(sys, cfg);
  std::vector<PropertyResult> out;
  if (suite == "singularity")
    suite_singularity(ctx, out);
  else if (suite == "bimodule")
    suite_bimodule(ctx, out);
  else if (suite == "core-rep")
    suite_core_rep(ctx, out);
  else if (suite == "ideals")
    suite_ideals(ctx, out);
  else if (suite == "all") {
    suite_singularity(ctx, out);
    suite_bimodule(ctx, out);
    suite_core_rep(ctx, out);
    suite_ideals(ctx, out);
  } else {
    throw SystemError("unknown verify suite: " + suite);
  }
  return out;
}

}  // namespace selfsim
