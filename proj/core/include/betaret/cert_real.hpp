#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

#include "betaret/enclosure.hpp"
#include "betaret/number_field.hpp"
#include "betaret/polynomial.hpp"

namespace betaret {

inline constexpr mpfr_prec_t kDefaultMaxBits = 4096;

enum class Ordering { Less, Equal, Greater, Unknown };
std::string_view to_string(Ordering o);

/// A real number known through a certified enclosure and, when available, an
/// exact number-field representation from which the enclosure can be
/// recomputed at any precision.
///
/// Values carrying an exact part compare decisively: equality is decided
/// algebraically and any nonzero difference is eventually separated by
/// refinement. Purely enclosed values compare only as far as their enclosure
/// allows.
class CertReal {
 public:
  CertReal();  // exact zero

  static CertReal from_long(long v);
  static CertReal from_rational(const mpq_class& q);
  static CertReal from_exact(FieldElem value, mpfr_prec_t bits = kMinPrecision);
  /// Inexact value; only the enclosure is known.
  static CertReal from_enclosure(Enclosure enc);
  /// Exact rational from a decimal literal ("1.754", "-2.5e-3") or fraction ("9/5").
  static CertReal parse_rational(std::string_view text);

  const Enclosure& enclosure() const { return enc_; }
  const std::optional<FieldElem>& exact() const { return exact_; }
  bool is_exact() const { return exact_.has_value(); }
  /// Exact rational value, if this is an exact rational.
  std::optional<mpq_class> as_rational() const;
  mpfr_prec_t precision() const { return enc_.precision(); }

  /// Enclosure recomputed from the exact part at `bits` and intersected with the
  /// current one; never widens. Inexact values are returned unchanged.
  CertReal refined(mpfr_prec_t bits) const;
  CertReal without_exact() const { return from_enclosure(enc_); }

  double approx() const;
  std::string to_decimal(int digits) const;

  CertReal operator-() const;
  friend CertReal operator+(const CertReal& a, const CertReal& b);
  friend CertReal operator-(const CertReal& a, const CertReal& b);
  friend CertReal operator*(const CertReal& a, const CertReal& b);
  /// Throws DivisionByZero for an exact zero divisor and DivisionBySignUnknown
  /// when the divisor's sign cannot be certified.
  friend CertReal operator/(const CertReal& a, const CertReal& b);

 private:
  CertReal(Enclosure enc, std::optional<FieldElem> exact);
  static CertReal combine(Enclosure enc, std::optional<FieldElem> exact);

  Enclosure enc_;
  std::optional<FieldElem> exact_;
};

Ordering compare(const CertReal& a, const CertReal& b, mpfr_prec_t max_bits = kDefaultMaxBits);
/// -1, 0, +1, or nullopt when undecidable within max_bits.
std::optional<int> sign(const CertReal& x, mpfr_prec_t max_bits = kDefaultMaxBits);

/// Certified root of `p` in (lo, hi), exact in its number field, with an
/// enclosure of width at most 2^-bits.
CertReal isolate_root(const Polynomial& p, const mpq_class& lo, const mpq_class& hi,
                      mpfr_prec_t bits = kMinPrecision);

}  // namespace betaret
