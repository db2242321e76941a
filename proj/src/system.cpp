#include "selfsim/system.hpp"

namespace selfsim {

std::vector<Word> all_words(int n_branches, int length) {
  std::vector<Word> out;
  size_t total = 1;
  for (int i = 0; i < length; ++i) total *= n_branches;
  out.reserve(total);
  Word w(length, 1);
  out.push_back(w);
  for (size_t k = 1; k < total; ++k) {
    // increment with entry 1..N, first slot fastest (lexicographic in reverse
    // reading, but enumeration order is irrelevant to the deduplicated sets)
    int pos = 0;
    while (pos < length && w[pos] == n_branches) {
      w[pos] = 1;
      ++pos;
    }
    if (pos == length) break;
    ++w[pos];
    out.push_back(w);
  }
  if (length == 0) out.assign(1, Word{});
  return out;
}

std::string word_to_string(const Word& w) {
  std::string s = "(";
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(w[i]);
  }
  return s + ")";
}

namespace {

// smallest k/2^20 above the given nonnegative value; keeps rational sqrt
// iterates from blowing up in size
Rational round_up_dyadic(const Quad& v) {
  static const long kScale = 1 << 20;
  Rational scaled = v.a + Rational(2) * v.b;  // sqrt3 < 2, so this dominates for b >= 0
  if (v.b < Rational(0)) scaled = v.a;        // crude but only used on positive radii
  mpz_class num = scaled.get_num() * kScale;
  mpz_class den = scaled.get_den();
  mpz_class quot, rem;
  mpz_fdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (rem != 0) quot += 1;
  return Rational(quot, kScale);
}

}  // namespace

Quad SelfSimilarSystem::diameter_bound() const {
  // diam(K) <= 2 * radius. Newton from above with dyadic rounding after each
  // step so iterate sizes stay bounded; rounding up preserves the invariant
  // upper >= sqrt(r2). Coarse is fine: this only scales membership tolerances.
  Quad r2 = ball_radius2;
  Quad upper = (Quad(Rational(1)) + r2) / Quad(Rational(2));  // >= sqrt(r2) when r2 >= 0
  if (upper * upper < r2) upper = r2 + Quad(Rational(1));
  for (int i = 0; i < 8; ++i) {
    Quad next = (upper + r2 / upper) / Quad(Rational(2));
    next = Quad(round_up_dyadic(next));
    if (next * next < r2) break;
    upper = next;
  }
  return upper * Quad(Rational(2));
}

SelfSimilarSystem finish_system(std::string name, int dimension, bool quadratic,
                                std::vector<AffineMap> branches, std::optional<QVec> seed) {
  if (branches.size() < 2) throw SystemError("a self-similar map needs N >= 2 branches");
  SelfSimilarSystem sys;
  sys.name = std::move(name);
  sys.dimension = dimension;
  sys.quadratic = quadratic;
  sys.branches = std::move(branches);

  Quad one(Rational(1));
  Quad upper(Rational(0)), lower(Rational(1));
  for (const auto& m : sys.branches) {
    if (m.dim() != dimension) throw SystemError("branch dimension mismatch");
    if (m.det().is_zero()) throw SystemError("branch matrix is singular (not a proper contraction)");
    Quad c = m.contraction_upper_bound();
    if (!(c < one)) throw SystemError("branch is not certified contractive (norm bound >= 1)");
    Quad cl = m.contraction_lower_bound();
    if (c > upper) upper = c;
    if (cl < lower) lower = cl;
  }
  sys.contraction_upper = upper;
  sys.contraction_lower = lower;

  sys.seed = seed ? *seed : sys.branches[0].fixed_point();

  // invariant ball around the seed: radius = max_j ||gamma_j(seed)-seed||_1
  // / (1 - c), doubled for slack. ||.||_1 dominates ||.||_2, so the triangle
  // bound gamma_j(B) subset B still holds.
  Quad rho(Rational(0));
  for (const auto& m : sys.branches) {
    Quad l1 = qvec_l1(qvec_sub(m(sys.seed), sys.seed));
    if (l1 > rho) rho = l1;
  }
  rho = rho / (one - upper);
  rho = rho * Quad(Rational(2));
  if (rho.is_zero()) rho = one;  // degenerate: all branches fix the seed
  sys.ball_center = sys.seed;
  sys.ball_radius2 = rho * rho;
  return sys;
}

AffineMap compose(const SelfSimilarSystem& sys, const Word& w) {
  if (w.empty()) throw SystemError("compose of the empty word");
  AffineMap m = sys.branch(w[0]);
  for (size_t k = 1; k < w.size(); ++k) m = sys.branch(w[k]).after(m);
  return m;
}

QVec word_image(const SelfSimilarSystem& sys, const Word& w, const QVec& start) {
  QVec p = start;
  for (int j : w) p = sys.branch(j)(p);
  return p;
}

namespace {

Quad q(long num, long den = 1) { return Quad(Rational(num, den)); }
Quad qs(long num, long den) { return Quad(Rational(0), Rational(num, den)); }

}  // namespace

SelfSimilarSystem make_tent() {
  // gamma_1(y) = y/2, gamma_2(y) = 1 - y/2 on [0,1]
  AffineMap g1{{{q(1, 2)}}, {q(0)}};
  AffineMap g2{{{q(-1, 2)}}, {q(1)}};
  return finish_system("tent", 1, false, {g1, g2});
}

SelfSimilarSystem make_cantor() {
  // gamma_1(y) = y/3, gamma_2(y) = y/3 + 2/3
  AffineMap g1{{{q(1, 3)}}, {q(0)}};
  AffineMap g2{{{q(1, 3)}}, {q(2, 3)}};
  return finish_system("cantor", 1, false, {g1, g2});
}

SelfSimilarSystem make_sierpinski() {
  // Rotated gasket on the triangle P=(1/2,sqrt3/2), Q=(0,0), R=(1,0):
  //   gamma_1 = plain half-scale onto the top cell   (P->P, Q->S, R->U)
  //   gamma_2 = half-scale + rotation by -2pi/3      (P->T, Q->S, R->Q)
  //   gamma_3 = half-scale + rotation by +2pi/3      (P->T, Q->R, R->U)
  // Linear parts are (1/2) R_theta, exact in Q(sqrt3).
  AffineMap g1{{{q(1, 2), q(0)}, {q(0), q(1, 2)}}, {q(1, 4), qs(1, 4)}};
  AffineMap g2{{{q(-1, 4), qs(1, 4)}, {qs(-1, 4), q(-1, 4)}}, {q(1, 4), qs(1, 4)}};
  AffineMap g3{{{q(-1, 4), qs(-1, 4)}, {qs(1, 4), q(-1, 4)}}, {q(1), q(0)}};
  return finish_system("sierpinski", 2, true, {g1, g2, g3});
}

bool is_builtin_name(const std::string& name) {
  return name == "tent" || name == "cantor" || name == "sierpinski";
}

SelfSimilarSystem builtin_system(const std::string& name) {
  if (name == "tent") return make_tent();
  if (name == "cantor") return make_cantor();
  if (name == "sierpinski") return make_sierpinski();
  throw SystemError("unknown built-in system: " + name);
}

}  // namespace selfsim
