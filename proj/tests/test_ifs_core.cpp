#include <doctest.h>

#include "selfsim/membership.hpp"

using namespace selfsim;

namespace {
Quad q(long n, long d = 1) { return Quad(Rational(n, d)); }
QVec pt(long n, long d = 1) { return {q(n, d)}; }
}  // namespace

TEST_CASE("quad arithmetic and ordering") {
  Quad a(Rational(1, 2), Rational(1, 3));  // 1/2 + (1/3) sqrt3
  Quad b(Rational(-1, 4), Rational(1, 6));
  CHECK((a + b) == Quad(Rational(1, 4), Rational(1, 2)));
  CHECK((a * b).sign() != 0);
  CHECK((a / a) == Quad(Rational(1)));
  // sign with opposite pulls: 2 - sqrt3 > 0, 3/2 - sqrt3 < 0
  CHECK(Quad(Rational(2), Rational(-1)).sign() == 1);
  CHECK(Quad(Rational(3, 2), Rational(-1)).sign() == -1);
  CHECK(quad_cmp(q(1, 3), q(1, 2)) < 0);
  CHECK(Quad(Rational(0), Rational(1)).to_double() == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("quad string round trip") {
  Quad a(Rational(-3, 7), Rational(5, 2));
  CHECK(quad_from_string(quad_to_string(a)) == a);
  CHECK(quad_to_string(q(1, 2)) == "1/2");
  CHECK(quad_from_string("1/2") == q(1, 2));
  CHECK(quad_from_string("0/1+1/4*sqrt3") == Quad(Rational(0), Rational(1, 4)));
  CHECK(quad_from_string("-1/2-1/4*sqrt3") == Quad(Rational(-1, 2), Rational(-1, 4)));
  CHECK_THROWS(rational_from_string("1/0"));
}

TEST_CASE("exact linear solve classifies loci") {
  QMat m{{q(1), q(2)}, {q(2), q(4)}};
  CHECK(solve_linear(m, {q(1), q(2)}).kind == LinearSolve::Affine);
  CHECK(solve_linear(m, {q(1), q(3)}).kind == LinearSolve::None);
  QMat inv{{q(2), q(1)}, {q(1), q(1)}};
  auto s = solve_linear(inv, {q(3), q(2)});
  REQUIRE(s.kind == LinearSolve::Unique);
  CHECK(qvec_eq(s.solution, {q(1), q(1)}));
}

TEST_CASE("evaluate: tent branch values") {
  auto tent = make_tent();
  CHECK(qvec_eq(tent.branch(1)(pt(1)), pt(1, 2)));   // gamma_1(1) = 1/2
  CHECK(qvec_eq(tent.branch(2)(pt(0)), pt(1)));      // gamma_2(0) = 1
  // fixed point of gamma_2 is 2/3
  QVec fp = tent.branch(2).fixed_point();
  CHECK(qvec_eq(tent.branch(2)(fp), fp));
}

TEST_CASE("compose follows the multi-index order") {
  auto tent = make_tent();
  // w = (2,1): gamma_1 o gamma_2 = 1/2 - x/4
  AffineMap m = compose(tent, {2, 1});
  CHECK(qvec_eq(m(pt(0)), pt(1, 2)));
  CHECK(m.matrix[0][0] == q(-1, 4));
  // length-1 word is the branch itself
  AffineMap one = compose(tent, {2});
  CHECK(one.matrix[0][0] == tent.branch(2).matrix[0][0]);
  // cantor w = (1,2): x/9 + 2/3
  auto cantor = make_cantor();
  AffineMap c12 = compose(cantor, {1, 2});
  CHECK(c12.matrix[0][0] == q(1, 9));
  CHECK(c12.offset[0] == q(2, 3));
  // contraction bound of a composite is at most the product of bounds
  CHECK(m.contraction_upper_bound() <= tent.contraction_upper * tent.contraction_upper);
}

TEST_CASE("compose concatenation identity") {
  auto sier = make_sierpinski();
  Word w1{2, 1, 3}, w2{1, 2};
  Word cat = w1;
  cat.insert(cat.end(), w2.begin(), w2.end());
  AffineMap lhs = compose(sier, cat);
  AffineMap rhs = compose(sier, w2).after(compose(sier, w1));
  for (int i = 0; i < 2; ++i) {
    CHECK(lhs.offset[i] == rhs.offset[i]);
    for (int j = 0; j < 2; ++j) CHECK(lhs.matrix[i][j] == rhs.matrix[i][j]);
  }
}

TEST_CASE("certified contraction constants") {
  auto tent = make_tent();
  CHECK(tent.contraction_upper == q(1, 2));
  CHECK(tent.contraction_lower == q(1, 2));
  auto cantor = make_cantor();
  CHECK(cantor.contraction_upper == q(1, 3));
  auto sier = make_sierpinski();
  CHECK(sier.contraction_upper == q(1, 2));  // exact: (1/2) rotations
  CHECK(sier.contraction_lower == q(1, 2));
}

TEST_CASE("sierpinski branches realize the vertex correspondences") {
  auto sier = make_sierpinski();
  QVec P{q(1, 2), Quad::sqrt3(Rational(1, 2))};
  QVec Q{q(0), q(0)};
  QVec R{q(1), q(0)};
  QVec S{q(1, 4), Quad::sqrt3(Rational(1, 4))};
  QVec T{q(1, 2), q(0)};
  QVec U{q(3, 4), Quad::sqrt3(Rational(1, 4))};
  CHECK(qvec_eq(sier.branch(1)(P), P));
  CHECK(qvec_eq(sier.branch(1)(Q), S));
  CHECK(qvec_eq(sier.branch(1)(R), U));
  CHECK(qvec_eq(sier.branch(2)(P), T));
  CHECK(qvec_eq(sier.branch(2)(Q), S));
  CHECK(qvec_eq(sier.branch(2)(R), Q));
  CHECK(qvec_eq(sier.branch(3)(P), T));
  CHECK(qvec_eq(sier.branch(3)(Q), R));
  CHECK(qvec_eq(sier.branch(3)(R), U));
  CHECK(qvec_eq(sier.seed, P));  // fixed point of branch 1
}

TEST_CASE("membership oracle certifies exactly") {
  auto tent = make_tent();
  MembershipOracle oracle(tent);
  CHECK(oracle.certify(pt(1, 2)) == Membership::ExactIn);
  CHECK(oracle.certify(pt(1, 3)) == Membership::ExactIn);  // 1/3 is periodic
  CHECK(oracle.certify(pt(2)) == Membership::ExactOut);
  CHECK(oracle.certify(pt(-1, 10)) == Membership::ExactOut);

  auto cantor = make_cantor();
  MembershipOracle co(cantor);
  CHECK(co.certify(pt(1, 2)) == Membership::ExactOut);  // middle-third gap
  CHECK(co.certify(pt(1, 3)) == Membership::ExactIn);
  CHECK(co.certify(pt(3, 4)) == Membership::ExactIn);  // 3/4 = .2020... base 3

  auto sier = make_sierpinski();
  MembershipOracle so(sier);
  CHECK(so.certify({q(0), q(0)}) == Membership::ExactIn);       // Q
  CHECK(so.certify({q(3, 2), q(0)}) == Membership::ExactOut);   // outside
}

TEST_CASE("left inverse matches the paper's tent values") {
  auto tent = make_tent();
  MembershipOracle oracle(tent);
  CHECK(qvec_eq(left_inverse(tent, oracle, pt(1, 2)), pt(1)));  // h(1/2) = 1
  CHECK(qvec_eq(left_inverse(tent, oracle, pt(0)), pt(0)));     // h(0) = 0
  CHECK(qvec_eq(left_inverse(tent, oracle, pt(1)), pt(0)));     // h(1) = 0
  // grid identity h(gamma_j(y)) = y
  AttractorGrid g = generate_grid(tent, 6);
  for (const auto& y : g.points)
    for (int j = 1; j <= 2; ++j)
      CHECK(qvec_eq(left_inverse(tent, oracle, tent.branch(j)(y)), y));
}

TEST_CASE("left inverse on the sierpinski gasket") {
  auto sier = make_sierpinski();
  MembershipOracle oracle(sier);
  QVec S{q(1, 4), Quad::sqrt3(Rational(1, 4))};
  QVec Q{q(0), q(0)};
  // S sits in the image of branches 1 and 2, both with source Q
  CHECK(qvec_eq(left_inverse(sier, oracle, S), Q));
  // grid points invert through the branch that produced them
  AttractorGrid g = generate_grid(sier, 3);
  for (const auto& y : g.points)
    for (int j = 1; j <= 3; ++j)
      CHECK(qvec_eq(left_inverse(sier, oracle, sier.branch(j)(y)), y));
}

TEST_CASE("binary IFS has no common left inverse") {
  // gamma_1 = x/2, gamma_2 = x/2 + 1/2 on [0,1]: 1/2 = gamma_1(1) = gamma_2(0)
  AffineMap g1{{{q(1, 2)}}, {q(0)}};
  AffineMap g2{{{q(1, 2)}}, {q(1, 2)}};
  auto sys = finish_system("binary", 1, false, {g1, g2});
  MembershipOracle oracle(sys);
  CHECK_THROWS_AS(left_inverse(sys, oracle, pt(1, 2)), SystemError);
}

TEST_CASE("system validation rejects non-contractions") {
  AffineMap expanding{{{q(3, 2)}}, {q(0)}};
  AffineMap ok{{{q(1, 2)}}, {q(1, 2)}};
  CHECK_THROWS_AS(finish_system("bad", 1, false, {expanding, ok}), SystemError);
  AffineMap singular{{{q(0)}}, {q(1, 2)}};
  CHECK_THROWS_AS(finish_system("bad2", 1, false, {singular, ok}), SystemError);
  CHECK_THROWS_AS(finish_system("bad3", 1, false, {ok}), SystemError);
}
