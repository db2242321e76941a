#include "selfsim/singularity.hpp"

#include <algorithm>
#include <map>

namespace selfsim {

namespace {
bool qvec_less(const QVec& x, const QVec& y) { return qvec_cmp(x, y) < 0; }

bool point_in(const std::vector<QVec>& sorted, const QVec& p) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), p, qvec_less);
  return it != sorted.end() && qvec_eq(*it, p);
}
}  // namespace

std::vector<QVec> sort_dedup_points(std::vector<QVec> pts) {
  std::sort(pts.begin(), pts.end(), qvec_less);
  pts.erase(std::unique(pts.begin(), pts.end(), qvec_eq), pts.end());
  return pts;
}

CollisionScan collision_scan(const SelfSimilarSystem& sys, const MembershipOracle& oracle) {
  CollisionScan scan;
  const int n = sys.branch_count();
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const AffineMap& gi = sys.branch(i);
      const AffineMap& gj = sys.branch(j);
      QMat m = qmat_sub(gi.matrix, gj.matrix);
      QVec rhs = qvec_sub(gj.offset, gi.offset);
      auto sol = solve_linear(m, rhs);
      switch (sol.kind) {
        case LinearSolve::None:
          break;
        case LinearSolve::Affine: {
          bool zero_rhs = true;
          for (const auto& c : rhs) zero_rhs = zero_rhs && c.is_zero();
          bool zero_m = true;
          for (const auto& row : m)
            for (const auto& c : row) zero_m = zero_m && c.is_zero();
          if (zero_m && zero_rhs)
            scan.identical.emplace_back(i, j);
          else
            scan.subspace.emplace_back(i, j);
          break;
        }
        case LinearSolve::Unique:
          if (oracle.contains(sol.solution)) scan.values.push_back(sol.solution);
          break;
      }
    }
  }
  scan.values = sort_dedup_points(std::move(scan.values));
  return scan;
}

std::vector<QVec> branch_values(const SelfSimilarSystem& sys, const MembershipOracle& oracle) {
  CollisionScan scan = collision_scan(sys, oracle);
  if (!scan.identical.empty())
    throw SystemError("branches " + std::to_string(scan.identical[0].first) + " and " +
                      std::to_string(scan.identical[0].second) + " are identical");
  if (!scan.subspace.empty())
    throw SystemError("collision locus of branches " + std::to_string(scan.subspace[0].first) +
                      "," + std::to_string(scan.subspace[0].second) +
                      " is an affine subspace; branch set is not finite");
  return scan.values;
}

std::vector<BranchData> branch_structure(const SelfSimilarSystem& sys,
                                         const MembershipOracle& oracle) {
  std::vector<BranchData> out;
  for (const QVec& c : branch_values(sys, oracle)) {
    // group branch indices by their image of c; groups of size >= 2 are the
    // branch points over c
    std::map<QVec, std::vector<int>, bool (*)(const QVec&, const QVec&)> groups(&qvec_less);
    for (int j = 1; j <= sys.branch_count(); ++j) groups[sys.branch(j)(c)].push_back(j);
    for (auto& [point, labels] : groups) {
      if (labels.size() < 2) continue;
      BranchData bd;
      bd.point = point;
      bd.value = c;
      bd.labels = labels;  // already sorted: j increases within map insertion
      std::sort(bd.labels.begin(), bd.labels.end());
      out.push_back(std::move(bd));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const BranchData& x, const BranchData& y) { return qvec_cmp(x.point, y.point) < 0; });
  return out;
}

OrbitSet orbit_set(const SelfSimilarSystem& sys, const MembershipOracle& oracle, const QVec& b,
                   int n) {
  if (n < 0) throw SystemError("orbit level must be >= 0");
  auto bs = branch_structure(sys, oracle);
  bool is_branch = false;
  for (const auto& bd : bs) is_branch = is_branch || qvec_eq(bd.point, b);
  if (!is_branch) throw SystemError("orbit base " + qvec_to_string(b) + " is not a branch point");

  OrbitSet o;
  o.base = b;
  o.level = n;
  std::vector<QVec> frontier{b};
  for (int k = 0; k < n; ++k) {
    std::vector<QVec> next;
    next.reserve(frontier.size() * sys.branch_count());
    for (const auto& p : frontier)
      for (int j = 1; j <= sys.branch_count(); ++j) next.push_back(sys.branch(j)(p));
    frontier = sort_dedup_points(std::move(next));
  }
  o.points = std::move(frontier);
  return o;
}

std::vector<QVec> iterated_branch_points(const SelfSimilarSystem& sys,
                                         const MembershipOracle& oracle, int n) {
  if (n < 1) throw SystemError("iterated branch level must be >= 1");
  std::vector<QVec> out;
  for (const auto& bd : branch_structure(sys, oracle)) {
    std::vector<QVec> frontier{bd.point};
    for (int k = 0; k <= n - 1; ++k) {
      out.insert(out.end(), frontier.begin(), frontier.end());
      if (k == n - 1) break;
      std::vector<QVec> next;
      for (const auto& p : frontier)
        for (int j = 1; j <= sys.branch_count(); ++j) next.push_back(sys.branch(j)(p));
      frontier = sort_dedup_points(std::move(next));
    }
  }
  return sort_dedup_points(std::move(out));
}

DirectIteratedBranches iterated_branch_points_direct(const SelfSimilarSystem& sys,
                                                     const MembershipOracle& oracle, int n) {
  DirectIteratedBranches out;
  auto words = all_words(sys.branch_count(), n);
  std::vector<AffineMap> maps;
  maps.reserve(words.size());
  for (const auto& w : words) maps.push_back(compose(sys, w));

  std::vector<QVec> points, values;
  for (size_t a = 0; a < words.size(); ++a) {
    for (size_t b = a + 1; b < words.size(); ++b) {
      auto sol = solve_linear(qmat_sub(maps[a].matrix, maps[b].matrix),
                              qvec_sub(maps[b].offset, maps[a].offset));
      if (sol.kind != LinearSolve::Unique) continue;  // parallel or degenerate pair
      if (!oracle.contains(sol.solution)) continue;
      values.push_back(sol.solution);
      points.push_back(maps[a](sol.solution));
      int diff = 0;
      for (int s = 0; s < n; ++s) diff += words[a][s] != words[b][s];
      if (diff != 1) out.unique_slot = false;
    }
  }
  out.points = sort_dedup_points(std::move(points));
  out.values = sort_dedup_points(std::move(values));
  return out;
}

QVec h_iterate(const SelfSimilarSystem& sys, const MembershipOracle& oracle, QVec p, int k) {
  for (int i = 0; i < k; ++i) p = left_inverse(sys, oracle, p);
  return p;
}

SingularityReport check_assumption_b(const SelfSimilarSystem& sys, const MembershipOracle& oracle,
                                     int postcritical_depth, int grid_depth,
                                     int slot_check_level) {
  SingularityReport rep;
  rep.grid_depth = grid_depth;
  rep.postcritical_depth = postcritical_depth;

  // clause (2): all collision loci are single points
  CollisionScan scan = collision_scan(sys, oracle);
  if (!scan.identical.empty()) {
    rep.assumption_b.finite_branch_set = {
        false, "branches " + std::to_string(scan.identical[0].first) + " and " +
                   std::to_string(scan.identical[0].second) +
                   " are identical; collision locus is everything"};
  } else if (!scan.subspace.empty()) {
    rep.assumption_b.finite_branch_set = {
        false, "collision locus of pair (" + std::to_string(scan.subspace[0].first) + "," +
                   std::to_string(scan.subspace[0].second) + ") is an affine subspace"};
  } else {
    rep.assumption_b.finite_branch_set = {
        true, std::to_string(scan.values.size()) + " collision value(s), all isolated"};
  }

  if (rep.assumption_b.finite_branch_set.pass) {
    rep.branch_values = scan.values;
    rep.branches = branch_structure(sys, oracle);
  }

  // clause (1): common left inverse on the grid
  {
    AttractorGrid grid = generate_grid(sys, grid_depth);
    long violations = 0;
    std::string first;
    for (const auto& y : grid.points) {
      for (int j = 1; j <= sys.branch_count() && violations == 0; ++j) {
        QVec p = sys.branch(j)(y);
        for (const auto& [i, src] : branch_preimages_in_k(sys, oracle, p)) {
          if (!qvec_eq(src, y)) {
            ++violations;
            first = "h(gamma_" + std::to_string(j) + qvec_to_string(y) + ") ambiguous: branch " +
                    std::to_string(i) + " gives " + qvec_to_string(src);
            break;
          }
        }
      }
      if (violations > 0) break;
    }
    rep.assumption_b.left_inverse =
        violations == 0
            ? ClauseVerdict{true, "left-inverse identity holds on grid depth " +
                                      std::to_string(grid_depth)}
            : ClauseVerdict{false, first};
  }

  // clause (3): postcritical evidence by backward closure from B
  if (rep.assumption_b.finite_branch_set.pass) {
    std::vector<QVec> b_points = rep.branch_points();
    std::vector<QVec> visited = b_points;  // depth-0 targets
    std::vector<QVec> frontier = b_points;
    std::vector<QVec> postcritical;
    bool stable = false;
    for (int depth = 1; depth <= postcritical_depth; ++depth) {
      std::vector<QVec> next;
      for (const auto& t : frontier)
        for (int j = 1; j <= sys.branch_count(); ++j) {
          QVec y = sys.branch(j).preimage(t);
          if (oracle.contains(y)) next.push_back(y);
        }
      next = sort_dedup_points(std::move(next));
      std::vector<QVec> fresh;
      for (const auto& y : next)
        if (!point_in(visited, y)) fresh.push_back(y);
      postcritical.insert(postcritical.end(), next.begin(), next.end());
      if (fresh.empty()) {
        stable = true;
        break;
      }
      visited = sort_dedup_points(std::move(visited));
      visited.insert(visited.end(), fresh.begin(), fresh.end());
      visited = sort_dedup_points(std::move(visited));
      frontier = std::move(fresh);
    }
    rep.postcritical = sort_dedup_points(std::move(postcritical));
    rep.postcritical_stable = stable;

    bool disjoint = true;
    QVec offender;
    for (const auto& b : b_points)
      if (point_in(rep.postcritical, b)) {
        disjoint = false;
        offender = b;
        break;
      }
    rep.assumption_b.postcritical_disjoint =
        disjoint ? ClauseVerdict{true, std::string("B and P^{<=") +
                                           std::to_string(postcritical_depth) + "} are disjoint" +
                                           (stable ? " (P stabilized, so P is finite)" : "")}
                 : ClauseVerdict{false, "branch point " + qvec_to_string(offender) +
                                            " is postcritical"};
  } else {
    rep.assumption_b.postcritical_disjoint = {false, "skipped: branch set not finite"};
  }

  // unique differing slot for colliding word pairs at small levels
  {
    bool ok = true;
    for (int lvl = 2; lvl <= slot_check_level && ok; ++lvl)
      ok = iterated_branch_points_direct(sys, oracle, lvl).unique_slot;
    rep.assumption_b.unique_collision_slot = {
        ok, ok ? "colliding word pairs differ in exactly one slot (levels <= " +
                     std::to_string(slot_check_level) + ")"
               : "a colliding word pair differs in more than one slot"};
  }

  rep.assumption_b.pass = rep.assumption_b.left_inverse.pass &&
                          rep.assumption_b.finite_branch_set.pass &&
                          rep.assumption_b.postcritical_disjoint.pass &&
                          rep.assumption_b.unique_collision_slot.pass;
  return rep;
}

}  // namespace selfsim
