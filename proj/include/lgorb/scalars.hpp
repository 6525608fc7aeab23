#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lgorb/error.hpp"

namespace lgorb {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p", "-p" or "p/q" into a canonical rational.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

/// Euler's totient.
unsigned totient(unsigned m);

/// Coefficients of the m-th cyclotomic polynomial, constant term first.
const std::vector<long>& cyclotomic_polynomial(unsigned m);

/// An element of Q(zeta_m) in the power basis 1, zeta, ..., zeta^{phi(m)-1}.
///
/// Values with different conductors combine only when one conductor divides
/// the other; the result lives in the larger field. Anything else raises a
/// conductor-mismatch error. Plain rationals have conductor 1.
class CycNum {
public:
  CycNum();
  CycNum(long value);  // NOLINT(google-explicit-constructor)
  explicit CycNum(const Rational& value, unsigned conductor = 1);

  /// zeta_m^{(m/order)*power}, i.e. a primitive-order root raised to `power`,
  /// inside the problem field of conductor m.
  static CycNum root_of_unity(unsigned conductor, unsigned order, long power);
  /// zeta_m^k.
  static CycNum zeta(unsigned conductor, long k);

  unsigned conductor() const noexcept { return m_; }
  const std::vector<Rational>& coeffs() const noexcept { return c_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  /// Requires is_rational().
  Rational to_rational() const;
  bool is_integer() const;

  /// The same number expressed in Q(zeta_m); m must be a multiple of conductor().
  CycNum lifted(unsigned m) const;

  CycNum inverse() const;
  CycNum pow(long e) const;

  CycNum& operator+=(const CycNum& o);
  CycNum& operator-=(const CycNum& o);
  CycNum& operator*=(const CycNum& o);
  CycNum& operator/=(const CycNum& o);

  friend CycNum operator+(CycNum a, const CycNum& b) { return a += b; }
  friend CycNum operator-(CycNum a, const CycNum& b) { return a -= b; }
  friend CycNum operator*(CycNum a, const CycNum& b) { return a *= b; }
  friend CycNum operator/(CycNum a, const CycNum& b) { return a /= b; }
  CycNum operator-() const;

  friend bool operator==(const CycNum& a, const CycNum& b);
  friend bool operator!=(const CycNum& a, const CycNum& b) { return !(a == b); }

  /// Printed in the polynomial grammar: "3/2", "1 - 2*z(5,1) + z(5,3)".
  std::string str() const;
  /// True when str() needs parentheses to be used as a factor.
  bool needs_parens() const;

private:
  CycNum(unsigned m, std::vector<Rational> c) : m_(m), c_(std::move(c)) {}
  static unsigned common_conductor(unsigned a, unsigned b);

  unsigned m_ = 1;
  std::vector<Rational> c_;
};

std::ostream& operator<<(std::ostream& os, const CycNum& x);

}  // namespace lgorb
