#include "selfsim/levels.hpp"

#include <algorithm>
#include <map>

namespace selfsim {

Word flat_digits(long flat, int n_branches, int level) {
  Word w(level);
  for (int k = 0; k < level; ++k) {
    w[k] = 1 + static_cast<int>(flat % n_branches);
    flat /= n_branches;
  }
  return w;
}

long digits_flat(const Word& digits, int n_branches) {
  long f = 0;
  long scale = 1;
  for (int d : digits) {
    f += (d - 1) * scale;
    scale *= n_branches;
  }
  return f;
}

QVec apply_flat(const SelfSimilarSystem& sys, const Word& digits, const QVec& x) {
  QVec p = x;
  for (size_t k = digits.size(); k-- > 0;) p = sys.branch(digits[k])(p);
  return p;
}

AffineMap flat_map(const SelfSimilarSystem& sys, const Word& digits) {
  AffineMap m = AffineMap::identity(sys.dimension);
  if (digits.empty()) return m;
  m = sys.branch(digits.back());
  for (size_t k = digits.size() - 1; k-- > 0;) m = sys.branch(digits[k]).after(m);
  return m;
}

const LevelFiber* LevelStructure::find_fiber(const QVec& c) const {
  for (const auto& f : fibers)
    if (qvec_eq(f.c, c)) return &f;
  return nullptr;
}

LevelStructure level_structure(const SelfSimilarSystem& sys, const MembershipOracle& oracle,
                               int level) {
  LevelStructure ls;
  ls.level = level;
  if (level == 0) return ls;

  ls.b_points = iterated_branch_points(sys, oracle, level);
  if (ls.b_points.empty()) return ls;

  std::vector<QVec> c_points;
  for (const auto& b : ls.b_points) c_points.push_back(h_iterate(sys, oracle, b, level));
  c_points = sort_dedup_points(std::move(c_points));

  const long total = [&] {
    long t = 1;
    for (int i = 0; i < level; ++i) t *= sys.branch_count();
    return t;
  }();

  for (const auto& c : c_points) {
    LevelFiber fiber;
    fiber.c = c;
    std::map<QVec, std::vector<int>, bool (*)(const QVec&, const QVec&)> groups(
        +[](const QVec& x, const QVec& y) { return qvec_cmp(x, y) < 0; });
    for (long f = 0; f < total; ++f)
      groups[apply_flat(sys, flat_digits(f, sys.branch_count(), level), c)].push_back(
          static_cast<int>(f));
    bool has_collision = false;
    for (auto& [pt, idxs] : groups) {
      has_collision = has_collision || idxs.size() >= 2;
      fiber.groups.push_back(idxs);
      fiber.group_points.push_back(pt);
    }
    if (!has_collision)
      throw SystemError("level structure: " + qvec_to_string(c) +
                        " was predicted as a branch value of gamma^n but no words collide");
    // canonical order: by smallest flat index in the group
    std::vector<size_t> order(fiber.groups.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      return fiber.groups[a].front() < fiber.groups[b].front();
    });
    LevelFiber sorted;
    sorted.c = fiber.c;
    for (size_t i : order) {
      sorted.groups.push_back(std::move(fiber.groups[i]));
      sorted.group_points.push_back(std::move(fiber.group_points[i]));
    }
    ls.fibers.push_back(std::move(sorted));
  }
  return ls;
}

}  // namespace selfsim
