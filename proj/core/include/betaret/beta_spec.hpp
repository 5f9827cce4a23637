#pragma once

#include <string>
#include <string_view>

#include "betaret/cert_real.hpp"

namespace betaret {

/// A base given by the user.
///
/// Accepted forms:
///   1.8   9/5   2.5e-1          exact rational
///   golden                      (1+sqrt 5)/2
///   multinacci(k)  gamma(k)     root of x^{k+1} - x^k - ... - 1 in (1,2)
///   alpha(k)  eta(k)            other marker roots
///   poly(x^3-x^2-x-1;1;2)       root of a polynomial in an open bracket
class BetaSpec {
 public:
  enum class Kind { Rational, Golden, Multinacci, Alpha, Eta, Poly };

  static BetaSpec parse(std::string_view text);
  static BetaSpec from_polynomial(std::string_view poly, std::string_view bracket);

  Kind kind() const { return kind_; }
  /// Canonical text; parse(format()) == *this.
  std::string format() const;
  CertReal value(mpfr_prec_t bits = kMinPrecision) const;

  friend bool operator==(const BetaSpec& a, const BetaSpec& b);

 private:
  Kind kind_ = Kind::Rational;
  mpq_class rational_;
  int k_ = 0;
  Polynomial poly_;
  mpq_class lo_;
  mpq_class hi_;
};

/// Exact decimal when the denominator is of the form 2^a 5^b, else "p/q".
std::string format_rational(const mpq_class& q);

}  // namespace betaret
