#include "selfsim/scalar.hpp"

#include <stdexcept>

namespace selfsim {

std::string rational_to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational rational_from_string(const std::string& s) {
  auto slash = s.find('/');
  mpq_class q;
  if (slash == std::string::npos) {
    q = mpq_class(mpz_class(s), 1);
  } else {
    mpz_class num(s.substr(0, slash));
    mpz_class den(s.substr(slash + 1));
    if (sgn(den) == 0) throw std::invalid_argument("rational with zero denominator: " + s);
    q = mpq_class(num, den);
  }
  q.canonicalize();
  return q;
}

std::optional<Rational> exact_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
    return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  return Rational(rn, rd);
}

Quad& Quad::operator*=(const Quad& o) {
  Rational na = a * o.a + 3 * b * o.b;
  Rational nb = a * o.b + b * o.a;
  a = na;
  b = nb;
  return *this;
}

Quad& Quad::operator/=(const Quad& o) {
  // 1/(a+b*sqrt3) = (a-b*sqrt3)/(a^2-3b^2); the norm vanishes only at zero
  // because sqrt3 is irrational.
  Rational norm = o.a * o.a - 3 * o.b * o.b;
  if (sgn(norm) == 0) {
    if (o.is_zero()) throw std::domain_error("division by zero in Q(sqrt3)");
    throw std::logic_error("vanishing field norm for nonzero element");
  }
  *this *= Quad(o.a / norm, -o.b / norm);
  return *this;
}

int Quad::sign() const {
  int sa = sgn(a), sb = sgn(b);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite pulls: a + b*sqrt3 > 0 iff a^2 > 3 b^2 when a > 0,
  // and iff a^2 < 3 b^2 when a < 0.
  int c = cmp(a * a, 3 * b * b);
  if (c == 0) return 0;  // cannot happen for nonzero b, kept for totality
  return (sa > 0) == (c > 0) ? sa : sb;
}

double Quad::to_double() const {
  static const double sqrt3 = std::sqrt(3.0);
  return a.get_d() + b.get_d() * sqrt3;
}

int quad_cmp(const Quad& x, const Quad& y) {
  return (x - y).sign();
}

std::optional<Quad> exact_sqrt(const Quad& q) {
  if (q.sign() < 0) return std::nullopt;
  if (q.is_rational()) {
    auto r = exact_sqrt(q.a);
    if (r) return Quad(*r);
    // p/q = 3 * square gives sqrt = sqrt(square)*sqrt3.
    auto r3 = exact_sqrt(q.a / 3);
    if (r3) return Quad::sqrt3(*r3);
  }
  return std::nullopt;
}

std::string Quad::str() const { return quad_to_string(*this); }

std::string quad_to_string(const Quad& q) {
  if (q.is_rational()) return rational_to_string(q.a);
  std::string s = rational_to_string(q.a);
  if (sgn(q.b) >= 0)
    s += "+" + rational_to_string(q.b) + "*sqrt3";
  else
    s += "-" + rational_to_string(-q.b) + "*sqrt3";
  return s;
}

Quad quad_from_string(const std::string& s) {
  auto star = s.find("*sqrt3");
  if (star == std::string::npos) {
    if (s.find("sqrt3") != std::string::npos)
      throw std::invalid_argument("malformed Q(sqrt3) literal: " + s);
    return Quad(rational_from_string(s));
  }
  // split "A+B*sqrt3" / "A-B*sqrt3" at the sign separating the two terms;
  // scan from the position before "*sqrt3" back to the separator.
  std::string head = s.substr(0, star);
  // find last '+' or '-' that is not the leading sign of the string and not
  // directly after '/' (denominators are unsigned in canonical output).
  size_t sep = std::string::npos;
  for (size_t i = head.size(); i-- > 1;) {
    if (head[i] == '+' || head[i] == '-') {
      sep = i;
      break;
    }
  }
  if (sep == std::string::npos) {
    // pure multiple of sqrt3
    return Quad::sqrt3(rational_from_string(head));
  }
  Rational a = rational_from_string(head.substr(0, sep));
  Rational b = rational_from_string(head.substr(sep + 1));
  if (head[sep] == '-') b = -b;
  return Quad(a, b);
}

Quad pow_quad(const Quad& base, int exp) {
  if (exp < 0) throw std::invalid_argument("negative exponent");
  Quad r(Rational(1));
  Quad p = base;
  int e = exp;
  while (e > 0) {
    if (e & 1) r *= p;
    p *= p;
    e >>= 1;
  }
  return r;
}

}  // namespace selfsim
