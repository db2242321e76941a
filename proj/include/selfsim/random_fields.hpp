#pragma once

// Deterministic pseudo-random generators for property batteries: polynomial
// scalar fields, Z-members (projected), compacts as sums of rank-ones, and
// graded core elements.

#include "selfsim/bimodule.hpp"

#include <random>

namespace selfsim {

class FieldRng {
 public:
  explicit FieldRng(uint64_t seed) : eng_(seed) {}

  // rational-grid coefficient in [-1, 1]
  Cplx coeff(bool real_only = false) {
    std::uniform_int_distribution<int> d(-8, 8);
    double re = d(eng_) / 8.0;
    double im = real_only ? 0.0 : d(eng_) / 8.0;
    return {re, im};
  }

  int uniform(int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    return d(eng_);
  }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

Poly random_poly(FieldRng& rng, int dim, int max_deg, bool real_only = false);

// Random member of Z_{gamma^level}: polynomial components projected onto the
// identification equations.
VectorField random_z_field(const SelfSimilarSystem& sys, const LevelStructure& ls, int level,
                           FieldRng& rng, int max_deg = 2);

// Random compact at the given level: a short sum of rank-one operators of
// Z-members (level 0: a plain scalar field).
MatrixField random_compact(const SelfSimilarSystem& sys, const LevelStructure& ls, int level,
                           FieldRng& rng, int terms = 2, int max_deg = 2);

// Random graded element with components at every level 0..level.
GradedCoreElement random_graded(const SelfSimilarSystem& sys,
                                const std::vector<LevelStructure>& ls_by_level, int level,
                                FieldRng& rng, int max_deg = 2);

}  // namespace selfsim
