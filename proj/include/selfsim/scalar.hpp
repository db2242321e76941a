#pragma once

// Exact scalar arithmetic for the classification pipeline. Every point that
// feeds branch/orbit combinatorics lives in Q or in the quadratic extension
// Q(sqrt 3); floats only appear on the operator-value side.

#include <gmpxx.h>

#include <cmath>
#include <optional>
#include <string>

namespace selfsim {

using Rational = mpq_class;

std::string rational_to_string(const Rational& q);
Rational rational_from_string(const std::string& s);

// Exact sqrt of a nonnegative rational when numerator and denominator are
// perfect squares; nullopt otherwise.
std::optional<Rational> exact_sqrt(const Rational& q);

// Element a + b*sqrt(3) of Q(sqrt 3). Plain rationals are the b == 0 case;
// there is no separate code path for them.
struct Quad {
  Rational a;
  Rational b;

  Quad() : a(0), b(0) {}
  Quad(long v) : a(v), b(0) {}
  Quad(const Rational& ra) : a(ra), b(0) {}
  Quad(const Rational& ra, const Rational& rb) : a(ra), b(rb) {}
  static Quad sqrt3(const Rational& coeff = Rational(1)) { return Quad(Rational(0), coeff); }

  bool is_zero() const { return sgn(a) == 0 && sgn(b) == 0; }
  bool is_rational() const { return sgn(b) == 0; }

  Quad operator-() const { return Quad(-a, -b); }
  Quad& operator+=(const Quad& o) { a += o.a; b += o.b; return *this; }
  Quad& operator-=(const Quad& o) { a -= o.a; b -= o.b; return *this; }
  Quad& operator*=(const Quad& o);
  Quad& operator/=(const Quad& o);

  friend Quad operator+(Quad x, const Quad& y) { x += y; return x; }
  friend Quad operator-(Quad x, const Quad& y) { x -= y; return x; }
  friend Quad operator*(Quad x, const Quad& y) { x *= y; return x; }
  friend Quad operator/(Quad x, const Quad& y) { x /= y; return x; }

  friend bool operator==(const Quad& x, const Quad& y) { return x.a == y.a && x.b == y.b; }
  friend bool operator!=(const Quad& x, const Quad& y) { return !(x == y); }

  // Sign of a + b*sqrt3, decided exactly (compare a^2 against 3 b^2 when the
  // two terms pull in opposite directions).
  int sign() const;

  Quad abs() const { return sign() >= 0 ? *this : -(*this); }

  double to_double() const;

  std::string str() const;
};

int quad_cmp(const Quad& x, const Quad& y);
inline bool operator<(const Quad& x, const Quad& y) { return quad_cmp(x, y) < 0; }
inline bool operator<=(const Quad& x, const Quad& y) { return quad_cmp(x, y) <= 0; }
inline bool operator>(const Quad& x, const Quad& y) { return quad_cmp(x, y) > 0; }
inline bool operator>=(const Quad& x, const Quad& y) { return quad_cmp(x, y) >= 0; }

// Exact sqrt within the field, for arguments of the form r^2 (rational b==0
// with perfect-square r). Used for certified contraction constants.
std::optional<Quad> exact_sqrt(const Quad& q);

// Serialization: "p/q" for rationals, "p/q+r/s*sqrt3" otherwise.
std::string quad_to_string(const Quad& q);
Quad quad_from_string(const std::string& s);

Quad pow_quad(const Quad& base, int exp);

}  // namespace selfsim
