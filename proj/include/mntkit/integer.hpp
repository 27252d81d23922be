#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace mnt {

using Integer = mpz_class;

/// Thrown when an internal invariant of a computed object fails. The message
/// starts with the invariant's name.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline Integer abs(const Integer& n) {
  Integer r;
  mpz_abs(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Integer isqrt(const Integer& n) {
  if (sgn(n) < 0) throw std::domain_error("isqrt of a negative integer");
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

inline bool is_square(const Integer& n) {
  return sgn(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

// Floor division and the matching non-negative remainder for a positive divisor.
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Integer mod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline bool divides(const Integer& d, const Integer& n) {
  if (sgn(d) == 0) return sgn(n) == 0;
  return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline Integer exact_div(const Integer& a, const Integer& b) {
  if (!divides(b, a)) throw std::domain_error("inexact integer division");
  Integer r;
  mpz_divexact(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Integer pow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline std::uint64_t mod_u64(const Integer& a, std::uint64_t m) {
  return mpz_fdiv_ui(a.get_mpz_t(), m);
}

inline bool fits_i64(const Integer& n) {
  static const Integer lo("-9223372036854775808");
  static const Integer hi("9223372036854775807");
  return n >= lo && n <= hi;
}

inline std::int64_t to_i64(const Integer& n) {
  if (!fits_i64(n)) throw std::overflow_error("integer does not fit in 64 bits: " + n.get_str());
  // mpz_get_si is limited to long, which is 64-bit on the supported targets.
  static_assert(sizeof(long) == 8);
  return mpz_get_si(n.get_mpz_t());
}

inline bool fits_u64(const Integer& n) {
  static const Integer hi("18446744073709551615");
  return sgn(n) >= 0 && n <= hi;
}

inline std::uint64_t to_u64(const Integer& n) {
  if (!fits_u64(n)) throw std::overflow_error("integer does not fit in unsigned 64 bits: " + n.get_str());
  static_assert(sizeof(unsigned long) == 8);
  return mpz_get_ui(n.get_mpz_t());
}

inline std::string to_string(const Integer& n) { return n.get_str(); }

inline Integer parse_integer(std::string_view text) {
  std::string s(text);
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  Integer r;
  if (s.empty() || r.set_str(s, 10) != 0) {
    throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  }
  return r;
}

// Natural log of a positive integer, valid beyond double range.
inline double log_abs(const Integer& n) {
  if (sgn(n) == 0) throw std::domain_error("log of zero");
  long exp2 = 0;
  double mant = mpz_get_d_2exp(&exp2, n.get_mpz_t());
  if (mant < 0) mant = -mant;
  return std::log(mant) + static_cast<double>(exp2) * 0.6931471805599453;
}

}  // namespace mnt
