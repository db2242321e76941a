#include "selfsim/ideals_traces.hpp"

#include <algorithm>

namespace selfsim {

namespace {
long pow_long(long base, int e) {
  long r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

int tag_cmp(const IdealTag& x, const IdealTag& y) {
  int c = qvec_cmp(x.b, y.b);
  if (c != 0) return c;
  return x.n - y.n;
}
}  // namespace

IdealDescriptor IdealDescriptor::orbit(std::vector<IdealTag> tags) {
  IdealDescriptor d;
  d.kind = OrbitUnion;
  std::sort(tags.begin(), tags.end(), [](const IdealTag& x, const IdealTag& y) {
    return tag_cmp(x, y) < 0;
  });
  tags.erase(std::unique(tags.begin(), tags.end(),
                         [](const IdealTag& x, const IdealTag& y) { return tag_cmp(x, y) == 0; }),
             tags.end());
  d.tags = std::move(tags);
  return d;
}

bool operator==(const IdealDescriptor& x, const IdealDescriptor& y) {
  if (x.kind != y.kind || x.tags.size() != y.tags.size()) return false;
  for (size_t i = 0; i < x.tags.size(); ++i)
    if (tag_cmp(x.tags[i], y.tags[i]) != 0) return false;
  return true;
}

std::vector<std::string> tag_overlap_warnings(const SelfSimilarSystem& sys,
                                              const MembershipOracle& oracle,
                                              const IdealDescriptor& d) {
  std::vector<std::string> warnings;
  if (d.kind != IdealDescriptor::OrbitUnion) return warnings;
  std::vector<std::vector<QVec>> orbits;
  for (const auto& t : d.tags) orbits.push_back(orbit_set(sys, oracle, t.b, t.n).points);
  for (size_t i = 0; i < orbits.size(); ++i)
    for (size_t j = i + 1; j < orbits.size(); ++j)
      for (const auto& p : orbits[i])
        if (std::binary_search(orbits[j].begin(), orbits[j].end(), p,
                               [](const QVec& x, const QVec& y) { return qvec_cmp(x, y) < 0; })) {
          warnings.push_back("orbit tags " + std::to_string(i) + " and " + std::to_string(j) +
                             " share the point " + qvec_to_string(p) + "; tags kept unmerged");
          break;
        }
  return warnings;
}

ClosedSet closed_set(const SelfSimilarSystem& sys, const MembershipOracle& oracle,
                     const IdealDescriptor& d) {
  switch (d.kind) {
    case IdealDescriptor::Full:
      return {ClosedSet::EmptySet, {}};
    case IdealDescriptor::Zero:
      return {ClosedSet::WholeK, {}};
    case IdealDescriptor::OrbitUnion: {
      std::vector<QVec> pts;
      for (const auto& t : d.tags) {
        auto o = orbit_set(sys, oracle, t.b, t.n);
        pts.insert(pts.end(), o.points.begin(), o.points.end());
      }
      return {ClosedSet::Points, sort_dedup_points(std::move(pts))};
    }
  }
  return {};
}

std::vector<std::vector<QVec>> descent_levels(const SelfSimilarSystem& sys,
                                              const MembershipOracle& oracle, const IdealTag& tag) {
  std::vector<std::vector<QVec>> out;
  for (int k = 0; k <= tag.n; ++k) out.push_back(orbit_set(sys, oracle, tag.b, tag.n - k).points);
  out.push_back({});  // F_m = empty for m > n
  return out;
}

std::vector<IdealDescriptor> primitive_ideals(const SelfSimilarSystem& sys,
                                              const MembershipOracle& oracle,
                                              const SingularityReport& report, int max_level) {
  (void)oracle;
  if (!report.assumption_b.pass)
    throw SystemError("primitive ideal enumeration requires a verified Assumption B");
  std::vector<IdealDescriptor> out;
  out.push_back(IdealDescriptor::zero());
  for (const auto& bd : report.branches)
    for (int n = 0; n <= max_level; ++n)
      out.push_back(IdealDescriptor::orbit({IdealTag{bd.point, n}}));
  return out;
}

IdealDescriptor ideal_meet(const std::vector<IdealDescriptor>& ds) {
  std::vector<IdealTag> tags;
  bool any = false;
  for (const auto& d : ds) {
    switch (d.kind) {
      case IdealDescriptor::Zero:
        return IdealDescriptor::zero();  // the zero ideal absorbs intersections
      case IdealDescriptor::Full:
        break;  // neutral
      case IdealDescriptor::OrbitUnion:
        any = true;
        tags.insert(tags.end(), d.tags.begin(), d.tags.end());
        break;
    }
  }
  if (!any) return IdealDescriptor::full();
  return IdealDescriptor::orbit(std::move(tags));
}

Cplx trace_of_pi_at(const SelfSimilarSystem& sys, const GradedCoreElement& t, int n,
                    const QVec& x) {
  const int nb = sys.branch_count();
  Cplx acc(0);
  for (int r = 0; r <= std::min(n, t.level); ++r) {
    const MatrixField& comp = t.comp[r];
    if (comp.sum_coeff_abs() == 0) continue;
    const long blocks = pow_long(nb, n - r);
    for (long blk = 0; blk < blocks; ++blk) {
      QVec y = apply_flat(sys, flat_digits(blk, nb, n - r), x);
      std::vector<double> yd = qvec_to_double(y);
      for (int p = 0; p < comp.n_dim; ++p) acc += comp.at(p, p).eval(yd);
    }
  }
  return acc;
}

Cplx trace_eval(const SelfSimilarSystem& sys, const TraceSpec& spec, const GradedCoreElement& t) {
  if (spec.kind == TraceSpec::Discrete) {
    const long nn = pow_long(sys.branch_count(), spec.n);
    return trace_of_pi_at(sys, t, spec.n, spec.b) / static_cast<double>(nn);
  }
  // Hutchinson: the measure depth adapts to the element level so that the
  // total sampling depth stays spec.depth; padding T by zero components then
  // leaves the value unchanged (exact self-similarity of the approximation).
  const int meas_depth = std::max(0, spec.depth - t.level);
  DiscreteMeasure mu = hutchinson_measure(sys, meas_depth);
  const long nl = pow_long(sys.branch_count(), t.level);
  Cplx acc(0);
  for (size_t k = 0; k < mu.support.size(); ++k) {
    Cplx tr = trace_of_pi_at(sys, t, t.level, mu.support[k]);
    acc += tr * (mu.weights[k].get_d() / static_cast<double>(nl));
  }
  return acc;
}

bool ideal_membership(const SelfSimilarSystem& sys, const MembershipOracle& oracle,
                      const IdealDescriptor& d, const GradedCoreElement& t, double tol) {
  switch (d.kind) {
    case IdealDescriptor::Full:
      return true;
    case IdealDescriptor::Zero: {
      // T must represent the zero operator
      MatrixField rep = pi(sys, t);
      AttractorGrid g = generate_grid(sys, std::min(6, 12 / std::max(1, sys.branch_count())));
      double worst = 0;
      for (const auto& p : g.points) worst = std::max(worst, rep.eval(p).cwiseAbs().maxCoeff());
      return worst <= tol;
    }
    case IdealDescriptor::OrbitUnion: {
      GradedCoreElement tt = graded_mul(sys, graded_adjoint(t), t);
      for (const auto& tag : d.tags) {
        Cplx v = trace_eval(sys, TraceSpec::discrete(tag.b, tag.n), tt);
        if (std::abs(v) > tol) return false;
      }
      (void)oracle;
      return true;
    }
  }
  return false;
}

long quotient_dimension(const SelfSimilarSystem& sys, const IdealDescriptor& d) {
  if (d.kind != IdealDescriptor::OrbitUnion)
    throw SystemError("quotient dimension is defined for orbit-union ideals");
  long total = 0;
  for (const auto& tag : d.tags) total += pow_long(sys.branch_count(), 2 * tag.n);
  return total;
}

std::vector<IdealDescriptor> jacobson_closure(const std::vector<IdealDescriptor>& subset,
                                              const std::vector<IdealDescriptor>& universe) {
  if (subset.empty()) return {};
  IdealDescriptor kernel = ideal_meet(subset);
  std::vector<IdealDescriptor> out;
  for (const auto& p : universe) {
    bool contains = false;
    if (kernel.kind == IdealDescriptor::Zero) {
      contains = true;  // the zero ideal sits inside every primitive
    } else if (p.kind == IdealDescriptor::Zero) {
      contains = kernel.kind == IdealDescriptor::Zero;
    } else if (p.kind == IdealDescriptor::OrbitUnion && kernel.kind == IdealDescriptor::OrbitUnion) {
      // intersection of maximal ideals J^(b,n) lies in J^(tag) iff tag occurs
      for (const auto& tag : kernel.tags)
        if (p.tags.size() == 1 && tag_cmp(p.tags[0], tag) == 0) contains = true;
    }
    if (contains) out.push_back(p);
  }
  return out;
}

Poly separating_witness(const SelfSimilarSystem& sys, const std::vector<QVec>& avoid,
                        const std::vector<QVec>& hit) {
  const int dim = sys.dimension;
  Poly w = Poly::constant(dim, Cplx(1));
  for (const auto& p : avoid) {
    Poly dist2(dim);
    for (int i = 0; i < dim; ++i) {
      Poly zi = Poly::coordinate(dim, i) - Poly::constant(dim, Cplx(p[i].to_double()));
      dist2 += zi * zi;
    }
    w = w * dist2;
  }
  double min_on_hit = std::numeric_limits<double>::infinity();
  for (const auto& y : hit) min_on_hit = std::min(min_on_hit, std::abs(w.eval(y)));
  if (!(min_on_hit > 1e-300))
    throw SystemError("separating witness degenerates: orbit sets overlap");
  w *= Cplx(1.0 / min_on_hit);
  return w;
}

}  // namespace selfsim
