#pragma once

// Branch structure of a self-similar map: branch values C, branch points B,
// branch indices e_b with their label sets, orbit sets O_{b,n}, iterated
// branch sets B_{gamma^n}, postcritical evidence and the Assumption B
// verdict. Everything here is exact.

#include "selfsim/membership.hpp"

namespace selfsim {

struct BranchData {
  QVec point;               // b in B
  QVec value;               // c = h(b) in C
  std::vector<int> labels;  // sorted j with gamma_j(c) = b; e_b = labels.size() >= 2
};

struct ClauseVerdict {
  bool pass = false;
  std::string detail;
};

struct AssumptionBVerdict {
  ClauseVerdict left_inverse;           // (1) h(gamma_j(y)) = y on the grid
  ClauseVerdict finite_branch_set;      // (2) every collision locus is a point
  ClauseVerdict postcritical_disjoint;  // (3) B and P^{<=D} do not meet
  ClauseVerdict unique_collision_slot;  // lem. on B_{gamma^n}: colliding words differ in one slot
  bool pass = false;
};

struct SingularityReport {
  std::vector<QVec> branch_values;
  std::vector<BranchData> branches;  // sorted by point
  std::vector<QVec> postcritical;    // P^{<=D}, sorted; does not include B itself
  bool postcritical_stable = false;  // backward closure reached before the depth cap
  int postcritical_depth = 0;
  int grid_depth = 0;
  AssumptionBVerdict assumption_b;

  std::vector<QVec> branch_points() const {
    std::vector<QVec> out;
    out.reserve(branches.size());
    for (const auto& b : branches) out.push_back(b.point);
    return out;
  }
};

struct OrbitSet {
  QVec base;
  int level = 0;
  std::vector<QVec> points;  // deduplicated, sorted
};

// raw pairwise collision scan; identical/infinite loci reported, not thrown
struct CollisionScan {
  std::vector<QVec> values;                      // unique solutions lying in K
  std::vector<std::pair<int, int>> identical;    // equal branches (invalid system)
  std::vector<std::pair<int, int>> subspace;     // affine collision locus (B infinite)
};
CollisionScan collision_scan(const SelfSimilarSystem& sys, const MembershipOracle& oracle);

// C_gamma; throws SystemError on identical branches or a non-finite locus.
std::vector<QVec> branch_values(const SelfSimilarSystem& sys, const MembershipOracle& oracle);

// B_gamma with branch indices and labels (assumption verdict not filled).
std::vector<BranchData> branch_structure(const SelfSimilarSystem& sys,
                                         const MembershipOracle& oracle);

OrbitSet orbit_set(const SelfSimilarSystem& sys, const MembershipOracle& oracle, const QVec& b,
                   int n);

// B_{gamma^n} through the iterated-branch formula: orbit images of B up to
// length n-1.
std::vector<QVec> iterated_branch_points(const SelfSimilarSystem& sys,
                                         const MembershipOracle& oracle, int n);

// Independent route: solve the collision systems of all pairs of length-n
// words directly. Used as the oracle for the formula above.
struct DirectIteratedBranches {
  std::vector<QVec> points;  // B_{gamma^n}
  std::vector<QVec> values;  // C_{gamma^n}
  bool unique_slot = true;   // every colliding pair differed in exactly one slot
};
DirectIteratedBranches iterated_branch_points_direct(const SelfSimilarSystem& sys,
                                                     const MembershipOracle& oracle, int n);

// Full report including Assumption B verification.
SingularityReport check_assumption_b(const SelfSimilarSystem& sys, const MembershipOracle& oracle,
                                     int postcritical_depth = 8, int grid_depth = 6,
                                     int slot_check_level = 2);

// h applied k times to an exact point of K.
QVec h_iterate(const SelfSimilarSystem& sys, const MembershipOracle& oracle, QVec p, int k);

std::vector<QVec> sort_dedup_points(std::vector<QVec> pts);

}  // namespace selfsim
