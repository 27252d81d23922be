#pragma once

#include <array>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "mntkit/integer.hpp"

namespace mnt {

/// Linear polynomial a*x + b with exact integer coefficients.
struct LinPoly {
  Integer a;  ///< leading coefficient
  Integer b;  ///< constant term

  friend bool operator==(const LinPoly& l, const LinPoly& r) { return l.a == r.a && l.b == r.b; }
};

/// Quadratic (or lower degree) polynomial c2*x^2 + c1*x + c0.
struct QuadPoly {
  Integer c2;
  Integer c1;
  Integer c0;

  QuadPoly() = default;
  QuadPoly(Integer c2_, Integer c1_, Integer c0_)
      : c2(std::move(c2_)), c1(std::move(c1_)), c0(std::move(c0_)) {}
  explicit QuadPoly(const LinPoly& l) : c2(0), c1(l.a), c0(l.b) {}

  bool is_zero() const { return sgn(c2) == 0 && sgn(c1) == 0 && sgn(c0) == 0; }

  /// Coefficients in ascending degree order, [c0, c1, c2].
  std::array<Integer, 3> ascending() const { return {c0, c1, c2}; }

  friend bool operator==(const QuadPoly& l, const QuadPoly& r) {
    return l.c2 == r.c2 && l.c1 == r.c1 && l.c0 == r.c0;
  }
};

inline Integer eval(const LinPoly& p, const Integer& x) { return p.a * x + p.b; }

inline Integer eval(const QuadPoly& p, const Integer& x) { return (p.c2 * x + p.c1) * x + p.c0; }

inline QuadPoly operator+(const QuadPoly& l, const QuadPoly& r) {
  return {l.c2 + r.c2, l.c1 + r.c1, l.c0 + r.c0};
}
inline QuadPoly operator-(const QuadPoly& l, const QuadPoly& r) {
  return {l.c2 - r.c2, l.c1 - r.c1, l.c0 - r.c0};
}
inline QuadPoly operator*(const Integer& s, const QuadPoly& p) { return {s * p.c2, s * p.c1, s * p.c0}; }
inline QuadPoly operator+(const QuadPoly& l, const LinPoly& r) { return l + QuadPoly(r); }
inline QuadPoly operator-(const QuadPoly& l, const LinPoly& r) { return l - QuadPoly(r); }
inline QuadPoly operator+(const QuadPoly& l, const Integer& c) { return {l.c2, l.c1, l.c0 + c}; }
inline QuadPoly operator-(const QuadPoly& l, const Integer& c) { return {l.c2, l.c1, l.c0 - c}; }

inline LinPoly operator-(const Integer& c, const LinPoly& p) { return {-p.a, c - p.b}; }
inline LinPoly operator*(const Integer& s, const LinPoly& p) { return {s * p.a, s * p.b}; }

inline QuadPoly operator*(const LinPoly& l, const LinPoly& r) {
  return {l.a * r.a, l.a * r.b + l.b * r.a, l.b * r.b};
}

inline QuadPoly square(const LinPoly& l) { return l * l; }

/// gcd of the coefficients.
inline Integer content(const QuadPoly& p) {
  if (p.is_zero()) throw std::domain_error("zero polynomial");
  return gcd(gcd(p.c2, p.c1), p.c0);
}

/// gcd of p(x) over all integers x. For degree <= 2 the values at 0, 1, 2
/// generate the same ideal as all values (finite differences).
inline Integer value_gcd(const QuadPoly& p) {
  if (p.is_zero()) throw std::domain_error("zero polynomial");
  return gcd(gcd(eval(p, 0), eval(p, 1)), eval(p, 2));
}

/// Largest integer dividing a(x)*b(x) for every integer x (the product has
/// degree <= 4, so five consecutive values suffice).
inline Integer fixed_divisor_of_product(const QuadPoly& a, const QuadPoly& b) {
  if (a.is_zero() || b.is_zero()) throw std::domain_error("zero polynomial");
  Integer g = 0;
  for (int x = 0; x <= 4; ++x) g = gcd(g, eval(a, x) * eval(b, x));
  return g;
}

/// Divides every coefficient by s; throws when the division is not exact.
inline QuadPoly divide_exact(const QuadPoly& p, const Integer& s) {
  return {exact_div(p.c2, s), exact_div(p.c1, s), exact_div(p.c0, s)};
}

/// p(u*x + v).
inline QuadPoly substitute_linear(const QuadPoly& p, const Integer& u, const Integer& v) {
  if (sgn(u) == 0) throw std::invalid_argument("substitution scale u must be nonzero");
  // c2 (ux+v)^2 + c1 (ux+v) + c0
  return {p.c2 * u * u, 2 * p.c2 * u * v + p.c1 * u, p.c2 * v * v + p.c1 * v + p.c0};
}

inline LinPoly substitute_linear(const LinPoly& p, const Integer& u, const Integer& v) {
  if (sgn(u) == 0) throw std::invalid_argument("substitution scale u must be nonzero");
  return {p.a * u, p.a * v + p.b};
}

inline Integer discriminant(const QuadPoly& p) { return p.c1 * p.c1 - 4 * p.c2 * p.c0; }

/// Irreducible over Q iff the discriminant is not a perfect square. Scaling by
/// the content does not change the answer.
inline bool is_irreducible_quadratic(const QuadPoly& p) {
  if (sgn(p.c2) == 0) throw std::domain_error("not quadratic");
  return !is_square(discriminant(p));
}

/// Resultant of two polynomials of formal degree 2 (Sylvester determinant).
inline Integer resultant(const QuadPoly& f, const QuadPoly& g) {
  const Integer x = f.c2 * g.c0 - f.c0 * g.c2;
  const Integer y = f.c2 * g.c1 - f.c1 * g.c2;
  const Integer z = f.c1 * g.c0 - f.c0 * g.c1;
  return x * x - y * z;
}

namespace detail {
inline void append_term(std::ostringstream& os, const Integer& c, const char* mono, bool& first) {
  if (sgn(c) == 0) return;
  Integer mag = abs(c);
  if (first) {
    if (sgn(c) < 0) os << '-';
  } else {
    os << (sgn(c) < 0 ? " - " : " + ");
  }
  if (*mono == '\0' || mag != 1) os << mag.get_str();
  os << mono;
  first = false;
}
}  // namespace detail

inline std::string to_string(const QuadPoly& p) {
  std::ostringstream os;
  bool first = true;
  detail::append_term(os, p.c2, "x^2", first);
  detail::append_term(os, p.c1, "x", first);
  detail::append_term(os, p.c0, "", first);
  if (first) os << '0';
  return os.str();
}

inline std::string to_string(const LinPoly& p) { return to_string(QuadPoly(p)); }

inline std::ostream& operator<<(std::ostream& os, const QuadPoly& p) { return os << to_string(p); }
inline std::ostream& operator<<(std::ostream& os, const LinPoly& p) { return os << to_string(p); }

}  // namespace mnt
