#pragma once

// Property batteries behind the `verify` CLI. Each property reports its
// worst measured defect against a fixed tolerance; suites are deterministic
// (fixed RNG seeds).

#include "selfsim/ideals_traces.hpp"
#include "selfsim/random_fields.hpp"

namespace selfsim {

struct PropertyResult {
  std::string name;
  double max_defect = 0;
  double tolerance = 0;
  bool pass = false;
  std::string note;
};

struct VerifyConfig {
  int grid_depth = 8;
  int max_level = 2;
  int max_ideal_level = 3;
  int postcritical_depth = 8;
  int n_random = 20;
  uint64_t rng_seed = 20240501;
  double tol_alg = 1e-9;   // algebraic identities
  double tol_pt = 1e-12;   // pointwise equalities
};

std::vector<std::string> suite_names();  // singularity, bimodule, core-rep, ideals

std::vector<PropertyResult> run_suite(const SelfSimilarSystem& sys, const std::string& suite,
                                      const VerifyConfig& cfg);

// homomorphism defect of pi on a pair of graded elements: a sup-norm bound
// of pi(ST)-pi(S)pi(T) via coefficient sums (valid on the unit box, which
// contains K for every built-in system), and a sup-norm lower bound for the
// scale 1 + |S||T| from sampled entries.
struct HomomorphismCheck {
  double defect_bound = 0;
  double scale_lower = 1;
};
HomomorphismCheck homomorphism_defect(const SelfSimilarSystem& sys, const GradedCoreElement& s,
                                      const GradedCoreElement& t,
                                      const std::vector<QVec>& sample_points);

double max_abs_on_points(const MatrixField& m, const std::vector<QVec>& points);

}  // namespace selfsim
