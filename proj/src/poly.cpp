#include "selfsim/poly.hpp"

#include <cmath>
#include <stdexcept>

namespace selfsim {

Poly Poly::constant(int dim, Cplx v) {
  Poly p(dim);
  p.c_[0] = v;
  return p;
}

Poly Poly::coordinate(int dim, int var) {
  if (var < 0 || var >= dim) throw std::invalid_argument("coordinate index out of range");
  Poly p(dim);
  if (var == 0) {
    p.nx_ = 2;
    p.c_.assign(2, Cplx(0));
    p.c_[1] = Cplx(1);
  } else {
    p.ny_ = 2;
    p.c_.assign(2, Cplx(0));
    p.c_[1] = Cplx(1);
  }
  return p;
}

Poly Poly::from_coeffs(int dim, int nx, int ny, std::vector<Cplx> coef) {
  if (static_cast<int>(coef.size()) != nx * ny) throw std::invalid_argument("coefficient count");
  Poly p(dim);
  p.nx_ = nx;
  p.ny_ = ny;
  p.c_ = std::move(coef);
  p.trim();
  return p;
}

Cplx Poly::coeff(int ex, int ey) const {
  if (ex >= nx_ || ey >= ny_) return Cplx(0);
  return c_[ex + nx_ * ey];
}

bool Poly::is_zero() const {
  for (const auto& v : c_)
    if (v != Cplx(0)) return false;
  return true;
}

double Poly::sum_coeff_abs() const {
  double s = 0;
  for (const auto& v : c_) s += std::abs(v);
  return s;
}

Cplx Poly::eval(const std::vector<double>& x) const {
  const double px = x.empty() ? 0.0 : x[0];
  const double py = x.size() > 1 ? x[1] : 0.0;
  Cplx acc(0);
  for (int ey = ny_ - 1; ey >= 0; --ey) {
    Cplx row(0);
    for (int ex = nx_ - 1; ex >= 0; --ex) row = row * px + c_[ex + nx_ * ey];
    acc = acc * py + row;
  }
  return acc;
}

Poly Poly::conjugated() const {
  Poly p = *this;
  for (auto& v : p.c_) v = std::conj(v);
  return p;
}

void Poly::trim() {
  int mx = 0, my = 0;
  for (int ey = 0; ey < ny_; ++ey)
    for (int ex = 0; ex < nx_; ++ex)
      if (c_[ex + nx_ * ey] != Cplx(0)) {
        mx = std::max(mx, ex);
        my = std::max(my, ey);
      }
  if (mx + 1 == nx_ && my + 1 == ny_) return;
  std::vector<Cplx> nc((mx + 1) * (my + 1), Cplx(0));
  for (int ey = 0; ey <= my; ++ey)
    for (int ex = 0; ex <= mx; ++ex) nc[ex + (mx + 1) * ey] = c_[ex + nx_ * ey];
  nx_ = mx + 1;
  ny_ = my + 1;
  c_ = std::move(nc);
}

Poly& Poly::operator+=(const Poly& o) {
  int nnx = std::max(nx_, o.nx_), nny = std::max(ny_, o.ny_);
  std::vector<Cplx> nc(nnx * nny, Cplx(0));
  for (int ey = 0; ey < ny_; ++ey)
    for (int ex = 0; ex < nx_; ++ex) nc[ex + nnx * ey] += c_[ex + nx_ * ey];
  for (int ey = 0; ey < o.ny_; ++ey)
    for (int ex = 0; ex < o.nx_; ++ex) nc[ex + nnx * ey] += o.c_[ex + o.nx_ * ey];
  nx_ = nnx;
  ny_ = nny;
  c_ = std::move(nc);
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  Poly neg = o;
  for (auto& v : neg.c_) v = -v;
  return *this += neg;
}

Poly& Poly::operator*=(Cplx s) {
  for (auto& v : c_) v *= s;
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r(a.dim_);
  r.nx_ = a.nx_ + b.nx_ - 1;
  r.ny_ = a.ny_ + b.ny_ - 1;
  r.c_.assign(r.nx_ * r.ny_, Cplx(0));
  for (int ay = 0; ay < a.ny_; ++ay)
    for (int ax = 0; ax < a.nx_; ++ax) {
      Cplx av = a.c_[ax + a.nx_ * ay];
      if (av == Cplx(0)) continue;
      for (int by = 0; by < b.ny_; ++by)
        for (int bx = 0; bx < b.nx_; ++bx)
          r.c_[(ax + bx) + r.nx_ * (ay + by)] += av * b.c_[bx + b.nx_ * by];
    }
  r.trim();
  return r;
}

Poly Poly::composed_with(const AffineMap& map) const {
  if (map.dim() != dim_) throw std::invalid_argument("affine substitution dimension mismatch");
  // linear substitutes L_i = sum_j A_ij x_j + b_i as degree-1 polys
  std::vector<Poly> lin(dim_, Poly(dim_));
  for (int i = 0; i < dim_; ++i) {
    Poly li = Poly::constant(dim_, Cplx(map.offset[i].to_double()));
    for (int j = 0; j < dim_; ++j) {
      Poly xj = Poly::coordinate(dim_, j);
      xj *= Cplx(map.matrix[i][j].to_double());
      li += xj;
    }
    lin[i] = li;
  }
  // powers of the substitutes up to the needed degree
  std::vector<Poly> powx(nx_), powy(ny_);
  powx[0] = Poly::constant(dim_, Cplx(1));
  for (int e = 1; e < nx_; ++e) powx[e] = powx[e - 1] * lin[0];
  powy[0] = Poly::constant(dim_, Cplx(1));
  for (int e = 1; e < ny_; ++e) powy[e] = powy[e - 1] * lin[dim_ > 1 ? 1 : 0];

  Poly out(dim_);
  for (int ey = 0; ey < ny_; ++ey)
    for (int ex = 0; ex < nx_; ++ex) {
      Cplx v = c_[ex + nx_ * ey];
      if (v == Cplx(0)) continue;
      Poly term = powx[ex];
      if (ey > 0) term = term * powy[ey];
      term *= v;
      out += term;
    }
  return out;
}

double Poly::max_coeff_diff(const Poly& o) const {
  double m = 0;
  int nnx = std::max(nx_, o.nx_), nny = std::max(ny_, o.ny_);
  for (int ey = 0; ey < nny; ++ey)
    for (int ex = 0; ex < nnx; ++ex) m = std::max(m, std::abs(coeff(ex, ey) - o.coeff(ex, ey)));
  return m;
}

}  // namespace selfsim
