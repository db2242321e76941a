#pragma once

// Certified membership "p in K" for exact points, used when collision
// solutions and preimage chains must be accepted or rejected.
//
// Three verdicts, in order of strength:
//   ExactIn   - p is a grid point, or some backward branch-preimage chain
//               from p closes into a cycle inside the invariant ball (the
//               cycle point is a fixed point of a composite branch, hence in
//               K, and forward images of it reach p).
//   ExactOut  - every backward chain leaves the invariant ball (no chain can
//               stay in K), or p is farther from grid(m) than the cell
//               diameter bound c^m * diam.
//   NearIn    - within c^m * diam of grid(m): accepted, false positives are
//               confined to that shell around K.

#include "selfsim/attractor.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace selfsim {

enum class Membership { ExactIn, ExactOut, NearIn };

class MembershipOracle {
 public:
  explicit MembershipOracle(const SelfSimilarSystem& sys, int proximity_depth = 12,
                            int descent_depth_cap = 48, size_t descent_node_cap = 8000);

  Membership certify(const QVec& p) const;
  bool contains(const QVec& p) const {
    return certify(p) != Membership::ExactOut;
  }

  const SelfSimilarSystem& system() const { return sys_; }

 private:
  enum class Status { In, Out, Unknown };
  Status descend(const QVec& p, std::map<QVec, int, bool (*)(const QVec&, const QVec&)>& on_path,
                 size_t& budget, int depth) const;
  const AttractorGrid& proximity_grid() const;
  Membership proximity_test(const QVec& p) const;

  const SelfSimilarSystem sys_;
  int proximity_depth_;
  int depth_cap_;
  size_t node_cap_;

  mutable std::mutex mu_;
  mutable std::map<QVec, Status, bool (*)(const QVec&, const QVec&)> memo_;
  mutable std::unique_ptr<AttractorGrid> grid_;
  mutable std::vector<std::vector<double>> grid_doubles_;
  mutable Quad threshold2_{Rational(-1)};
};

// All branch preimages of p that lie in K: pairs (j, y) with gamma_j(y) = p.
std::vector<std::pair<int, QVec>> branch_preimages_in_k(const SelfSimilarSystem& sys,
                                                        const MembershipOracle& oracle,
                                                        const QVec& p);

// h(p) for an exact point p in K. Throws if p is not in any branch image or
// if distinct branches give distinct sources (no common left inverse).
QVec left_inverse(const SelfSimilarSystem& sys, const MembershipOracle& oracle, const QVec& p);

// Needed only for plotting: resolve an off-grid double point to the branch
// whose image contains it within eps, and invert that branch numerically.
std::optional<std::vector<double>> left_inverse_approx(const SelfSimilarSystem& sys,
                                                       const std::vector<double>& p, double eps);

}  // namespace selfsim
