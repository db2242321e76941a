#include "selfsim/membership.hpp"

#include <algorithm>
#include <cmath>

namespace selfsim {

namespace {
bool qvec_less(const QVec& x, const QVec& y) { return qvec_cmp(x, y) < 0; }
}  // namespace

MembershipOracle::MembershipOracle(const SelfSimilarSystem& sys, int proximity_depth,
                                   int descent_depth_cap, size_t descent_node_cap)
    : sys_(sys),
      proximity_depth_(proximity_depth),
      depth_cap_(descent_depth_cap),
      node_cap_(descent_node_cap),
      memo_(&qvec_less) {}

MembershipOracle::Status MembershipOracle::descend(
    const QVec& p, std::map<QVec, int, bool (*)(const QVec&, const QVec&)>& on_path,
    size_t& budget, int depth) const {
  if (!sys_.in_invariant_ball(p)) return Status::Out;
  if (budget == 0 || depth > depth_cap_) return Status::Unknown;
  --budget;

  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = memo_.find(p);
    if (it != memo_.end()) return it->second;
  }
  if (on_path.count(p)) return Status::In;  // cycle: fixed point of a composite branch

  on_path.emplace(p, depth);
  bool any_unknown = false;
  Status result = Status::Out;
  for (int j = 1; j <= sys_.branch_count() && result != Status::In; ++j) {
    QVec y = sys_.branch(j).preimage(p);
    Status s = descend(y, on_path, budget, depth + 1);
    if (s == Status::In) result = Status::In;
    if (s == Status::Unknown) any_unknown = true;
  }
  on_path.erase(p);
  if (result != Status::In && any_unknown) return Status::Unknown;

  std::lock_guard<std::mutex> lk(mu_);
  memo_.emplace(p, result);
  return result;
}

const AttractorGrid& MembershipOracle::proximity_grid() const {
  std::lock_guard<std::mutex> lk(mu_);
  if (!grid_) {
    grid_ = std::make_unique<AttractorGrid>(generate_grid(sys_, proximity_depth_));
    grid_doubles_.reserve(grid_->points.size());
    for (const auto& pt : grid_->points) grid_doubles_.push_back(qvec_to_double(pt));
    Quad t = pow_quad(sys_.contraction_upper, proximity_depth_) * sys_.diameter_bound();
    threshold2_ = t * t;
  }
  return *grid_;
}

Membership MembershipOracle::proximity_test(const QVec& p) const {
  const AttractorGrid& g = proximity_grid();
  const double t2 = threshold2_.to_double() * (1.0 + 1e-6) + 1e-18;
  std::vector<double> pd = qvec_to_double(p);
  for (size_t k = 0; k < g.points.size(); ++k) {
    double d2 = 0;
    for (size_t i = 0; i < pd.size(); ++i) {
      double d = pd[i] - grid_doubles_[k][i];
      d2 += d * d;
    }
    if (d2 <= t2 && qvec_dist2(p, g.points[k]) <= threshold2_) return Membership::NearIn;
  }
  return Membership::ExactOut;
}

Membership MembershipOracle::certify(const QVec& p) const {
  if (static_cast<int>(p.size()) != sys_.dimension)
    throw SystemError("membership query with wrong dimension");
  std::map<QVec, int, bool (*)(const QVec&, const QVec&)> on_path(&qvec_less);
  size_t budget = node_cap_;
  switch (descend(p, on_path, budget, 0)) {
    case Status::In:
      return Membership::ExactIn;
    case Status::Out:
      return Membership::ExactOut;
    case Status::Unknown:
      return proximity_test(p);
  }
  return Membership::ExactOut;
}

std::vector<std::pair<int, QVec>> branch_preimages_in_k(const SelfSimilarSystem& sys,
                                                        const MembershipOracle& oracle,
                                                        const QVec& p) {
  std::vector<std::pair<int, QVec>> out;
  for (int j = 1; j <= sys.branch_count(); ++j) {
    QVec y = sys.branch(j).preimage(p);
    if (oracle.contains(y)) out.emplace_back(j, y);
  }
  return out;
}

QVec left_inverse(const SelfSimilarSystem& sys, const MembershipOracle& oracle, const QVec& p) {
  auto pre = branch_preimages_in_k(sys, oracle, p);
  if (pre.empty()) throw SystemError("point is not in any branch image of K");
  for (size_t k = 1; k < pre.size(); ++k)
    if (!qvec_eq(pre[k].second, pre[0].second))
      throw SystemError("left inverse is not well-defined at " + qvec_to_string(p));
  return pre[0].second;
}

std::optional<std::vector<double>> left_inverse_approx(const SelfSimilarSystem& sys,
                                                       const std::vector<double>& p, double eps) {
  // invert each branch in doubles and keep the candidate closest to the
  // attractor, measured by proximity to a coarse grid
  static constexpr int kGridDepth = 8;
  AttractorGrid g = generate_grid(sys, std::min(kGridDepth, 10));
  std::vector<std::vector<double>> gd;
  gd.reserve(g.points.size());
  for (const auto& q : g.points) gd.push_back(qvec_to_double(q));

  auto dist_to_grid = [&](const std::vector<double>& x) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& gp : gd) {
      double d2 = 0;
      for (size_t i = 0; i < x.size(); ++i) d2 += (x[i] - gp[i]) * (x[i] - gp[i]);
      best = std::min(best, d2);
    }
    return std::sqrt(best);
  };

  std::optional<std::vector<double>> best;
  double best_score = eps;
  for (int j = 1; j <= sys.branch_count(); ++j) {
    // y = A^{-1} (p - b) in doubles via the exact inverse map
    QVec pq(p.size());
    // rational approximation of the double point is fine here; this path is
    // plotting-only by design
    for (size_t i = 0; i < p.size(); ++i) pq[i] = Quad(Rational(p[i]));
    QVec yq = sys.branch(j).preimage(pq);
    std::vector<double> y = qvec_to_double(yq);
    double score = dist_to_grid(y);
    if (score < best_score) {
      best_score = score;
      best = y;
    }
  }
  return best;
}

}  // namespace selfsim
