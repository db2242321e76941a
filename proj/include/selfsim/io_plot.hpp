#pragma once

// SVG scatter/histogram output for attractor grids and orbit-set overlays,
// plus CSV export of (word, point, weight).

#include "selfsim/attractor.hpp"
#include "selfsim/singularity.hpp"

namespace selfsim {

// 2-D systems: scatter of the grid; 1-D systems: weight histogram.
// orbit_overlays: one point set per level, drawn in distinct colors.
std::string plot_svg(const SelfSimilarSystem& sys, const AttractorGrid& grid,
                     const DiscreteMeasure& mu,
                     const std::vector<std::vector<QVec>>& orbit_overlays);

std::string grid_csv(const SelfSimilarSystem& sys, const AttractorGrid& grid,
                     const DiscreteMeasure& mu);

}  // namespace selfsim
