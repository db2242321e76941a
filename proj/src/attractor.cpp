#include "selfsim/attractor.hpp"

#include <algorithm>
#include <numeric>

namespace selfsim {

int AttractorGrid::find(const QVec& p) const {
  auto it = std::lower_bound(points.begin(), points.end(), p,
                             [](const QVec& x, const QVec& y) { return qvec_cmp(x, y) < 0; });
  if (it != points.end() && qvec_eq(*it, p)) return static_cast<int>(it - points.begin());
  return -1;
}

AttractorGrid generate_grid(const SelfSimilarSystem& sys, int depth) {
  if (depth < 0) throw SystemError("grid depth must be >= 0");
  const int n = sys.branch_count();

  // build word images level by level; per-level vector indexed in the same
  // order as all_words(n, level) (first slot fastest)
  std::vector<QVec> images{sys.seed};
  for (int level = 1; level <= depth; ++level) {
    std::vector<QVec> next;
    next.reserve(images.size() * n);
    // word order: new last slot is the slowest digit of the enumeration;
    // all_words increments slot 0 fastest, so level-k word w + last letter j
    // sits at index (idx(w) + |words_k| * (j-1)) ... verified by construction
    for (int j = 1; j <= n; ++j)
      for (const auto& p : images) next.push_back(sys.branch(j)(p));
    images = std::move(next);
  }

  AttractorGrid g;
  g.depth = depth;

  // canonical sort + dedup, then map each word image to its slot
  std::vector<uint32_t> order(images.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](uint32_t x, uint32_t y) {
    int c = qvec_cmp(images[x], images[y]);
    if (c != 0) return c < 0;
    return x < y;
  });
  g.point_of_word.assign(images.size(), 0);
  for (uint32_t k = 0; k < order.size(); ++k) {
    if (k == 0 || !qvec_eq(images[order[k]], g.points.back())) g.points.push_back(images[order[k]]);
    g.point_of_word[order[k]] = static_cast<uint32_t>(g.points.size() - 1);
  }
  return g;
}

DiscreteMeasure hutchinson_measure(const SelfSimilarSystem& sys, int depth) {
  AttractorGrid g = generate_grid(sys, depth);
  DiscreteMeasure mu;
  mu.depth = depth;
  mu.support = g.points;
  mu.weights.assign(g.points.size(), Rational(0));
  Rational w(1);
  for (int i = 0; i < depth; ++i) w /= sys.branch_count();
  for (uint32_t idx : g.point_of_word) mu.weights[idx] += w;
  return mu;
}

Quad integrate_monomial(const DiscreteMeasure& mu, const std::vector<int>& exponents) {
  Quad acc(Rational(0));
  for (size_t k = 0; k < mu.support.size(); ++k) {
    Quad v(Rational(1));
    for (size_t i = 0; i < exponents.size(); ++i) v *= pow_quad(mu.support[k][i], exponents[i]);
    acc += v * Quad(mu.weights[k]);
  }
  return acc;
}

}  // namespace selfsim
