#pragma once

// Ideal lattice of the core: closed-set descriptors, the Rieffel descent
// F_k = O_{b,n-k}, model primitive ideals as trace kernels, the discrete
// traces tau^{(b,n)} and the Hutchinson trace, quotients and hull-kernel
// closure. Requires a verified Assumption B report.

#include "selfsim/core_rep.hpp"

namespace selfsim {

struct IdealTag {
  QVec b;
  int n = 0;
};

struct IdealDescriptor {
  enum Kind { Zero, Full, OrbitUnion } kind = Zero;
  std::vector<IdealTag> tags;  // canonical: sorted by (b, n), deduplicated

  static IdealDescriptor zero() { return {Zero, {}}; }
  static IdealDescriptor full() { return {Full, {}}; }
  static IdealDescriptor orbit(std::vector<IdealTag> tags);

  friend bool operator==(const IdealDescriptor& x, const IdealDescriptor& y);
};

// Overlapping orbit tags are legal but reported (the paper does not merge
// them); returns human-readable warnings.
std::vector<std::string> tag_overlap_warnings(const SelfSimilarSystem& sys,
                                              const MembershipOracle& oracle,
                                              const IdealDescriptor& d);

struct ClosedSet {
  enum Kind { EmptySet, WholeK, Points } kind = EmptySet;
  std::vector<QVec> points;  // sorted, for kind == Points
};
ClosedSet closed_set(const SelfSimilarSystem& sys, const MembershipOracle& oracle,
                     const IdealDescriptor& d);

// F_0,...,F_n then the empty set, for a single orbit tag.
std::vector<std::vector<QVec>> descent_levels(const SelfSimilarSystem& sys,
                                              const MembershipOracle& oracle, const IdealTag& tag);

// [Zero] plus one OrbitUnion singleton per branch point and level <= max_level;
// [Zero] alone when there is no branch point (the core is simple).
std::vector<IdealDescriptor> primitive_ideals(const SelfSimilarSystem& sys,
                                              const MembershipOracle& oracle,
                                              const SingularityReport& report, int max_level);

// Intersection of ideals = union of tag sets; Zero absorbs, Full is neutral.
IdealDescriptor ideal_meet(const std::vector<IdealDescriptor>& ds);

struct TraceSpec {
  enum Kind { Discrete, Hutchinson } kind = Discrete;
  QVec b;         // Discrete: branch point
  int n = 0;      // Discrete: level
  int depth = 8;  // Hutchinson: total sampling depth budget

  static TraceSpec discrete(QVec b, int n) { return {Discrete, std::move(b), n, 0}; }
  static TraceSpec hutchinson(int depth) { return {Hutchinson, {}, 0, depth}; }
};

// Trace of Pi^{(n)}(T)(x) computed blockwise at exact points (no matrix
// assembly); components above level n contribute zero.
Cplx trace_of_pi_at(const SelfSimilarSystem& sys, const GradedCoreElement& t, int n,
                    const QVec& x);

Cplx trace_eval(const SelfSimilarSystem& sys, const TraceSpec& spec, const GradedCoreElement& t);

bool ideal_membership(const SelfSimilarSystem& sys, const MembershipOracle& oracle,
                      const IdealDescriptor& d, const GradedCoreElement& t, double tol = 1e-9);

long quotient_dimension(const SelfSimilarSystem& sys, const IdealDescriptor& d);

// Hull-kernel closure within the truncated primitive list.
std::vector<IdealDescriptor> jacobson_closure(const std::vector<IdealDescriptor>& subset,
                                              const std::vector<IdealDescriptor>& universe);

// Real scalar field vanishing on `avoid` and of modulus >= 1 on `hit`;
// throws if the two sets meet. Used to separate trace kernels.
Poly separating_witness(const SelfSimilarSystem& sys, const std::vector<QVec>& avoid,
                        const std::vector<QVec>& hit);

}  // namespace selfsim
