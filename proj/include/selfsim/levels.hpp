#pragma once

// Collision structure of the iterated map gamma^n in the flat coordinates
// used by the matrix representation.
//
// Flat index convention (fixed project-wide): a level-n component index
// F in [0, N^n) has digits i_1,...,i_n with i_k = 1 + (F / N^{k-1}) mod N,
// and the component of a field at base point x refers to the upstairs point
//   Gamma_F(x) = gamma_{i_1}(gamma_{i_2}( ... gamma_{i_n}(x) ... ))
// (the most significant digit i_n acts first). With this layout the natural
// embedding T -> T (x) I_{n-r} is block diagonal with contiguous blocks
// indexed by the high digits (i_n,...,i_{r+1}) and block value the pullback
// of T along gamma_{i_{r+1}} o ... o gamma_{i_n}.

#include "selfsim/singularity.hpp"

namespace selfsim {

Word flat_digits(long flat, int n_branches, int level);
long digits_flat(const Word& digits, int n_branches);

// Exact point Gamma_F(x) for the digit word of a flat index.
QVec apply_flat(const SelfSimilarSystem& sys, const Word& digits, const QVec& x);

// Gamma_F as one affine map (exact coefficient composition).
AffineMap flat_map(const SelfSimilarSystem& sys, const Word& digits);

struct LevelFiber {
  QVec c;                                // element of C_{gamma^n}
  std::vector<std::vector<int>> groups;  // partition of flat indices by the image Gamma_F(c)
  std::vector<QVec> group_points;        // common image per group (branch point when |group|>=2)
};

struct LevelStructure {
  int level = 0;
  std::vector<LevelFiber> fibers;  // sorted by c
  std::vector<QVec> b_points;      // B_{gamma^n}, sorted

  const LevelFiber* find_fiber(const QVec& c) const;
};

// Build from B_gamma via the iterated-branch-set formula, then group the
// word images over each c = h^n(b).
LevelStructure level_structure(const SelfSimilarSystem& sys, const MembershipOracle& oracle,
                               int level);

}  // namespace selfsim
