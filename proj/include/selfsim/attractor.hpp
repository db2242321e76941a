#pragma once

// Finite approximations of the attractor K and of the uniform-weight
// Hutchinson measure. Grid points are exact word-images of the seed; since
// the seed is a fixed point of branch 1, grids are nested in depth.

#include "selfsim/system.hpp"

#include <cstdint>

namespace selfsim {

struct AttractorGrid {
  int depth = 0;
  std::vector<QVec> points;              // deduplicated, sorted lexicographically
  std::vector<uint32_t> point_of_word;   // word (enumeration order of all_words) -> index into points

  int find(const QVec& p) const;  // index or -1, exact binary search
};

AttractorGrid generate_grid(const SelfSimilarSystem& sys, int depth);

struct DiscreteMeasure {
  int depth = 0;
  std::vector<QVec> support;       // same order as the grid's points
  std::vector<Rational> weights;   // exact, sum to 1
};

DiscreteMeasure hutchinson_measure(const SelfSimilarSystem& sys, int depth);

// Exact integral of the coordinate monomial prod x_i^{e_i} against the measure.
Quad integrate_monomial(const DiscreteMeasure& mu, const std::vector<int>& exponents);

}  // namespace selfsim
