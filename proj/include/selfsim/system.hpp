#pragma once

// A self-similar map: N proper affine contractions with a common left
// inverse. Branch indices are 1-based everywhere user-facing, matching the
// alphabet {1,...,N}.

#include "selfsim/linalg.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace selfsim {

// Multi-index word over {1,...,N}; entry order is the application order of
// compose(): word (i1,...,in) denotes gamma_{in} o ... o gamma_{i1}.
using Word = std::vector<int>;

std::vector<Word> all_words(int n_branches, int length);
std::string word_to_string(const Word& w);

struct SystemError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SelfSimilarSystem {
  std::string name;
  int dimension = 1;
  bool quadratic = false;  // scalar field: false -> Q, true -> Q(sqrt3)
  std::vector<AffineMap> branches;
  QVec seed;  // a point of K; the fixed point of branch 1 unless overridden

  // certified per-system contraction constants
  Quad contraction_upper;  // max over branches, < 1
  Quad contraction_lower;  // min over branches, > 0

  // invariant ball B(ball_center, ball_radius): every branch maps it into
  // itself, so K is contained in it (squared radius kept for exact tests)
  QVec ball_center;
  Quad ball_radius2;

  int branch_count() const { return static_cast<int>(branches.size()); }

  const AffineMap& branch(int j) const {  // 1-based
    if (j < 1 || j > branch_count()) throw SystemError("branch index out of range");
    return branches[j - 1];
  }

  bool in_invariant_ball(const QVec& p) const {
    return qvec_dist2(p, ball_center) <= ball_radius2;
  }

  // Rational upper bound D with diam(K) <= D, derived from the invariant ball.
  Quad diameter_bound() const;
};

// Validates invariants (N >= 2, proper contractions, injectivity), fills the
// certified constants and the invariant ball.
SelfSimilarSystem finish_system(std::string name, int dimension, bool quadratic,
                                std::vector<AffineMap> branches,
                                std::optional<QVec> seed = std::nullopt);

// gamma_{i_n} o ... o gamma_{i_1} for w = (i_1,...,i_n); w nonempty.
AffineMap compose(const SelfSimilarSystem& sys, const Word& w);

// Image of the seed under compose(w); iterative, exact.
QVec word_image(const SelfSimilarSystem& sys, const Word& w, const QVec& start);

// The three worked examples.
SelfSimilarSystem make_tent();
SelfSimilarSystem make_cantor();
SelfSimilarSystem make_sierpinski();
bool is_builtin_name(const std::string& name);
SelfSimilarSystem builtin_system(const std::string& name);

}  // namespace selfsim
