#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "betaret/enclosure.hpp"

namespace betaret {

/// Univariate polynomial with rational coefficients, stored lowest degree first
/// and always trimmed (no trailing zero coefficients; the zero polynomial is empty).
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<mpq_class> coeffs);
  static Polynomial from_integers(const std::vector<long>& coeffs);
  static Polynomial constant(const mpq_class& c);
  static Polynomial monomial(const mpq_class& c, int degree);
  /// Parses expressions such as "x^3-x^2-x-1" or "2*x^3 - 4x^2 + 1".
  static Polynomial parse(std::string_view text);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<mpq_class>& coeffs() const { return coeffs_; }
  mpq_class coeff(int i) const;
  const mpq_class& leading() const { return coeffs_.back(); }
  bool has_integer_coeffs() const;

  Polynomial monic() const;
  Polynomial derivative() const;
  /// Squarefree part p / gcd(p, p'), made monic.
  Polynomial squarefree() const;

  mpq_class eval(const mpq_class& x) const;
  Enclosure eval(const Enclosure& x) const;
  /// Exact sign of p(x).
  int sign_at(const mpq_class& x) const;

  Polynomial operator-() const;
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  /// Euclidean division; throws on a zero divisor.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const;
  Polynomial operator%(const Polynomial& divisor) const { return divmod(divisor).second; }

  std::string to_string() const;

 private:
  void trim();

  std::vector<mpq_class> coeffs_;
};

/// Monic greatest common divisor (zero if both inputs are zero).
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// Returns (g, s, t) with s*a + t*b = g = gcd(a, b), g monic.
struct ExtendedGcd {
  Polynomial g;
  Polynomial s;
  Polynomial t;
};
ExtendedGcd extended_gcd(const Polynomial& a, const Polynomial& b);

/// Sturm chain of a squarefree polynomial.
std::vector<Polynomial> sturm_chain(const Polynomial& p);
/// Number of distinct real roots in the half-open interval (lo, hi].
int count_roots(const std::vector<Polynomial>& chain, const mpq_class& lo, const mpq_class& hi);

}  // namespace betaret
