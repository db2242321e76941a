#include <doctest.h>

#include "selfsim/random_fields.hpp"
#include "selfsim/verify.hpp"

using namespace selfsim;

namespace {
Quad q(long n, long d = 1) { return Quad(Rational(n, d)); }
QVec pt(long n, long d = 1) { return {q(n, d)}; }

double entries_dist(const MatrixField& a, const MatrixField& b) {
  double m = 0;
  for (int i = 0; i < a.n_dim; ++i)
    for (int j = 0; j < a.n_dim; ++j) m = std::max(m, a.at(i, j).max_coeff_diff(b.at(i, j)));
  return m;
}
}  // namespace

TEST_CASE("embed a scalar field into level one") {
  auto tent = make_tent();
  // a(x) = x embeds as diag(x/2, 1 - x/2)
  MatrixField a = MatrixField::scalar(tent, Poly::coordinate(1, 0));
  MatrixField e = embed(tent, a, 1);
  for (double x : {0.0, 0.5, 0.75, 1.0}) {
    Eigen::MatrixXcd v = e.eval(std::vector<double>{x});
    CHECK(std::abs(v(0, 0) - Cplx(x / 2)) < 1e-15);
    CHECK(std::abs(v(1, 1) - Cplx(1 - x / 2)) < 1e-15);
    CHECK(std::abs(v(0, 1)) == 0.0);
    CHECK(std::abs(v(1, 0)) == 0.0);
  }
  // r = n is the identity embedding
  MatrixField same = embed(tent, a, 0);
  CHECK(entries_dist(same, a) == 0.0);
  // constants embed to constant block diagonals
  MatrixField c = MatrixField::scalar(tent, Poly::constant(1, Cplx(2, 1)));
  MatrixField ce = embed(tent, c, 2);
  Eigen::MatrixXcd cv = ce.eval(pt(1, 3));
  for (int i = 0; i < 4; ++i) CHECK(std::abs(cv(i, i) - Cplx(2, 1)) < 1e-15);
}

TEST_CASE("embedding is transitive and multiplicative") {
  auto sier = make_sierpinski();
  MembershipOracle oracle(sier);
  LevelStructure ls1 = level_structure(sier, oracle, 1);
  FieldRng rng(3);
  MatrixField m = random_compact(sier, ls1, 1, rng);
  MatrixField two_step = embed(sier, embed(sier, m, 2), 3);
  MatrixField one_step = embed(sier, m, 3);
  CHECK(entries_dist(two_step, one_step) < 1e-13);

  MatrixField m2 = random_compact(sier, ls1, 1, rng);
  MatrixField prod_then_embed = embed(sier, mf_mul(m, m2), 2);
  MatrixField embed_then_prod = mf_mul(embed(sier, m, 2), embed(sier, m2, 2));
  CHECK(entries_dist(prod_then_embed, embed_then_prod) < 1e-12);
}

TEST_CASE("pi on simple graded elements") {
  auto tent = make_tent();
  // unit maps to the identity matrix field
  GradedCoreElement one = GradedCoreElement::unit(tent, 2);
  MatrixField rep = pi(tent, one);
  Eigen::MatrixXcd v = rep.eval(pt(1, 3));
  CHECK((v - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-15);

  // single top component is passed through
  MembershipOracle oracle(tent);
  LevelStructure ls2 = level_structure(tent, oracle, 2);
  FieldRng rng(5);
  MatrixField top = random_compact(tent, ls2, 2, rng);
  GradedCoreElement t = GradedCoreElement::from_component(tent, top, 2);
  CHECK(entries_dist(pi(tent, t), top) == 0.0);

  // tent level 1: value is diag(a(gamma_j x)) + [f_i conj(g_j)]
  LevelStructure ls1 = level_structure(tent, oracle, 1);
  Poly a = random_poly(rng, 1, 2);
  VectorField f = random_z_field(tent, ls1, 1, rng);
  VectorField g = random_z_field(tent, ls1, 1, rng);
  GradedCoreElement mix = GradedCoreElement::zero(tent, 1);
  mix.comp[0] = MatrixField::scalar(tent, a);
  mix.comp[1] = rank_one(tent, f, g);
  QVec x = pt(2, 7);
  Eigen::MatrixXcd got = pi(tent, mix).eval(x);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Cplx expect = f.comp[i].eval(x) * std::conj(g.comp[j].eval(x));
      if (i == j) expect += a.eval(tent.branch(i + 1)(x));
      CHECK(std::abs(got(i, j) - expect) < 1e-13);
    }
}

TEST_CASE("graded algebra: unit, adjoint, products") {
  auto tent = make_tent();
  MembershipOracle oracle(tent);
  std::vector<LevelStructure> ls;
  for (int r = 0; r <= 3; ++r) ls.push_back(level_structure(tent, oracle, r));
  FieldRng rng(9);
  GradedCoreElement t = random_graded(tent, ls, 2, rng);
  GradedCoreElement one = GradedCoreElement::unit(tent, 2);
  // T * 1 = T
  GradedCoreElement t1 = graded_mul(tent, t, one);
  for (int r = 0; r <= 2; ++r) CHECK(entries_dist(t1.comp[r], t.comp[r]) < 1e-13);
  // (TS)* = S* T* via representations
  GradedCoreElement s = random_graded(tent, ls, 2, rng);
  MatrixField lhs = pi(tent, graded_adjoint(graded_mul(tent, t, s)));
  MatrixField rhs = pi(tent, graded_mul(tent, graded_adjoint(s), graded_adjoint(t)));
  CHECK(entries_dist(lhs, rhs) < 1e-12);
  // product of two level-1 rank ones matches the rank-one calculus
  VectorField f = random_z_field(tent, ls[1], 1, rng);
  VectorField g = random_z_field(tent, ls[1], 1, rng);
  VectorField u = random_z_field(tent, ls[1], 1, rng);
  VectorField v = random_z_field(tent, ls[1], 1, rng);
  GradedCoreElement tf = GradedCoreElement::from_component(tent, rank_one(tent, f, g), 1);
  GradedCoreElement tu = GradedCoreElement::from_component(tent, rank_one(tent, u, v), 1);
  GradedCoreElement prod = graded_mul(tent, tf, tu);
  Poly gu = inner_product(g, u);
  VectorField fgu = f;
  for (auto& comp : fgu.comp) comp = comp * gu;
  MatrixField expect = rank_one(tent, fgu, v);
  CHECK(entries_dist(prod.comp[1], expect) < 1e-12);
}

TEST_CASE("pi is a homomorphism (coefficient-dominated bound)") {
  for (const auto& sys : {make_tent(), make_sierpinski()}) {
    MembershipOracle oracle(sys);
    std::vector<LevelStructure> ls;
    for (int r = 0; r <= 3; ++r) ls.push_back(level_structure(sys, oracle, r));
    std::vector<QVec> sample = generate_grid(sys, 3).points;
    FieldRng rng(21);
    for (int trial = 0; trial < 5; ++trial) {
      GradedCoreElement s = random_graded(sys, ls, 2, rng);
      GradedCoreElement t = random_graded(sys, ls, 2, rng);
      HomomorphismCheck hc = homomorphism_defect(sys, s, t, sample);
      CHECK(hc.defect_bound <= 1e-9 * hc.scale_lower);
      // adjoint is exact
      CHECK(entries_dist(pi(sys, graded_adjoint(t)), pi(sys, t).adjoint()) == 0.0);
    }
  }
}

TEST_CASE("commuting diagram with the level embedding") {
  auto tent = make_tent();
  MembershipOracle oracle(tent);
  std::vector<LevelStructure> ls;
  for (int r = 0; r <= 3; ++r) ls.push_back(level_structure(tent, oracle, r));
  FieldRng rng(23);
  GradedCoreElement t = random_graded(tent, ls, 2, rng);
  MatrixField a = pi(tent, graded_pad(tent, t, 3));
  MatrixField b = embed(tent, pi(tent, t), 3);
  CHECK(entries_dist(a, b) < 1e-13);
}

TEST_CASE("d-membership distinguishes honest compacts") {
  auto tent = make_tent();
  MembershipOracle oracle(tent);
  LevelStructure ls1 = level_structure(tent, oracle, 1);
  // constant E11 fails (rows 1,2 must agree at c=1)
  MatrixField e11 = MatrixField::zero(tent, 1);
  e11.at(0, 0) = Poly::constant(1, Cplx(1));
  CHECK_FALSE(d_membership(ls1, e11));
  // the zero field passes
  CHECK(d_membership(ls1, MatrixField::zero(tent, 1)));
  // the level-1 identity is not compact: rows of I cannot agree across the
  // label set at c = 1
  CHECK_FALSE(d_membership(ls1, MatrixField::identity(tent, 1)));
  FieldRng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    MatrixField m = random_compact(tent, ls1, 1, rng);
    CHECK(d_membership(ls1, m));
    MatrixField broken = m;
    broken.at(0, rng.uniform(0, 1)) += Poly::constant(1, Cplx(1e-3));
    CHECK_FALSE(d_membership(ls1, broken));
  }
}

TEST_CASE("sup norm: identity, diagonal, rank one") {
  auto tent = make_tent();
  CHECK(sup_norm(tent, MatrixField::identity(tent, 2), 6) == doctest::Approx(1.0));
  MatrixField diag = MatrixField::zero(tent, 1);
  diag.at(0, 0) = Poly::constant(1, Cplx(2));
  diag.at(1, 1) = Poly::constant(1, Cplx(1));
  CHECK(sup_norm(tent, diag, 6) == doctest::Approx(2.0));
  // |theta_{f,f}| = sup (f|f)
  MembershipOracle oracle(tent);
  LevelStructure ls1 = level_structure(tent, oracle, 1);
  FieldRng rng(37);
  VectorField f = random_z_field(tent, ls1, 1, rng);
  MatrixField theta = rank_one(tent, f, f);
  Poly ff = inner_product(f, f);
  double sup_ip = 0;
  for (const auto& p : generate_grid(tent, 10).points)
    sup_ip = std::max(sup_ip, std::abs(ff.eval(p)));
  CHECK(sup_norm(tent, theta, 10) == doctest::Approx(sup_ip).epsilon(1e-9));
}

TEST_CASE("compact absorption pushes levels up") {
  auto tent = make_tent();
  MembershipOracle oracle(tent);
  std::vector<LevelStructure> ls;
  for (int r = 0; r <= 2; ++r) ls.push_back(level_structure(tent, oracle, r));
  std::vector<QVec> b_points{pt(1, 2)};
  // v(x) = x - 1/2 vanishes exactly on B
  Poly v = Poly::coordinate(1, 0) - Poly::constant(1, Cplx(0.5));
  FieldRng rng(41);
  GradedCoreElement t = random_graded(tent, ls, 1, rng);
  GradedCoreElement absorbed = compact_absorption(tent, b_points, t, v);
  REQUIRE(absorbed.level == 2);
  CHECK(absorbed.comp[0].sum_coeff_abs() == 0.0);
  CHECK(d_membership(ls[1], absorbed.comp[1], 1e-10));
  CHECK(d_membership(ls[2], absorbed.comp[2], 1e-10));
  // pi image is unchanged
  GradedCoreElement scaled = t;
  for (auto& comp : scaled.comp) comp = mf_mul_scalar_field(comp, v);
  MatrixField a = pi(tent, graded_pad(tent, scaled, 2));
  MatrixField b = pi(tent, absorbed);
  CHECK(entries_dist(a, b) < 1e-12);
  // a pure top compact that also lies one level up dies at branch points
  GradedCoreElement top =
      GradedCoreElement::from_component(tent, mf_mul_scalar_field(t.comp[1], v), 1);
  CHECK(pi(tent, top).eval(pt(1, 2)).cwiseAbs().maxCoeff() < 1e-12);
  // v = 0 gives the zero element
  GradedCoreElement zeroed = compact_absorption(tent, b_points, t, Poly(1));
  for (const auto& comp : zeroed.comp) CHECK(comp.sum_coeff_abs() == 0.0);
  // fields that do not vanish on B are rejected
  CHECK_THROWS_AS(compact_absorption(tent, b_points, t, Poly::constant(1, Cplx(1))), SystemError);
}

TEST_CASE("pi images preserve the submodule") {
  auto sier = make_sierpinski();
  MembershipOracle oracle(sier);
  std::vector<LevelStructure> ls;
  for (int r = 0; r <= 2; ++r) ls.push_back(level_structure(sier, oracle, r));
  FieldRng rng(43);
  GradedCoreElement t = random_graded(sier, ls, 2, rng);
  VectorField f = random_z_field(sier, ls[2], 2, rng);
  VectorField image = apply_matrix(pi(sier, t), f);
  double defect = 1;
  CHECK(check_membership(ls[2], image, 1e-9, &defect));
}
