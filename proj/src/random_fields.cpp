#include "selfsim/random_fields.hpp"

namespace selfsim {

Poly random_poly(FieldRng& rng, int dim, int max_deg, bool real_only) {
  // dense coefficients up to the per-variable degree cap
  int nx = max_deg + 1;
  int ny = dim > 1 ? max_deg + 1 : 1;
  std::vector<Cplx> coef(nx * ny);
  for (auto& c : coef) c = rng.coeff(real_only);
  return Poly::from_coeffs(dim, nx, ny, std::move(coef));
}

VectorField random_z_field(const SelfSimilarSystem& sys, const LevelStructure& ls, int level,
                           FieldRng& rng, int max_deg) {
  VectorField f = VectorField::zero(sys, level);
  for (auto& comp : f.comp) comp = random_poly(rng, sys.dimension, max_deg);
  return z_project(sys, ls, std::move(f));
}

MatrixField random_compact(const SelfSimilarSystem& sys, const LevelStructure& ls, int level,
                           FieldRng& rng, int terms, int max_deg) {
  if (level == 0) return MatrixField::scalar(sys, random_poly(rng, sys.dimension, max_deg));
  MatrixField acc = MatrixField::zero(sys, level);
  for (int t = 0; t < terms; ++t) {
    VectorField f = random_z_field(sys, ls, level, rng, max_deg);
    VectorField g = random_z_field(sys, ls, level, rng, max_deg);
    acc = mf_add(acc, rank_one(sys, f, g));
  }
  acc.d_member_flag = true;
  return acc;
}

GradedCoreElement random_graded(const SelfSimilarSystem& sys,
                                const std::vector<LevelStructure>& ls_by_level, int level,
                                FieldRng& rng, int max_deg) {
  GradedCoreElement t = GradedCoreElement::zero(sys, level);
  for (int r = 0; r <= level; ++r)
    t.comp[r] = random_compact(sys, ls_by_level[r], r, rng, /*terms=*/r == 0 ? 1 : 2, max_deg);
  return t;
}

}  // namespace selfsim
