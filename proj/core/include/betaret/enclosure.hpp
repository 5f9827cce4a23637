#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace betaret {

inline constexpr mpfr_prec_t kMinPrecision = 64;

/// Owning wrapper around an `mpfr_t`.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = kMinPrecision);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }

  mpq_class to_rational() const;
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

 private:
  mpfr_t value_;
};

/// Closed interval [lo, hi] with binary floating-point (hence dyadic) endpoints.
/// All arithmetic rounds outward, so the true result of an operation on any
/// points of the operands lies in the result.
class Enclosure {
 public:
  Enclosure();  // [0, 0]

  static Enclosure from_long(long v, mpfr_prec_t prec = kMinPrecision);
  static Enclosure from_rational(const mpq_class& q, mpfr_prec_t prec = kMinPrecision);
  static Enclosure from_bounds(const mpq_class& lo, const mpq_class& hi,
                               mpfr_prec_t prec = kMinPrecision);
  /// Smallest enclosure containing both operands.
  static Enclosure hull(const Enclosure& a, const Enclosure& b);

  const BigFloat& lo() const { return lo_; }
  const BigFloat& hi() const { return hi_; }
  mpfr_prec_t precision() const { return lo_.precision(); }

  mpq_class lo_rational() const { return lo_.to_rational(); }
  mpq_class hi_rational() const { return hi_.to_rational(); }
  mpq_class midpoint() const;
  /// Upper bound on hi - lo.
  double width() const;
  /// -log2(width), +inf for a point.
  double accuracy_bits() const;

  bool contains(const mpq_class& q) const;
  bool contains(const Enclosure& other) const;
  bool contains_zero() const;
  bool is_point() const;
  /// +1 / -1 when every point has that sign, 0 otherwise.
  int certain_sign() const;
  bool overlaps(const Enclosure& other) const;

  /// Nonempty intersection, or *this unchanged when the operands are disjoint.
  Enclosure intersect(const Enclosure& other) const;
  Enclosure with_precision(mpfr_prec_t prec) const;

  Enclosure operator-() const;
  friend Enclosure operator+(const Enclosure& a, const Enclosure& b);
  friend Enclosure operator-(const Enclosure& a, const Enclosure& b);
  friend Enclosure operator*(const Enclosure& a, const Enclosure& b);
  /// Throws DivisionBySignUnknown when b contains zero.
  friend Enclosure operator/(const Enclosure& a, const Enclosure& b);

  /// Midpoint rounded to `digits` significant decimal digits.
  std::string to_decimal(int digits) const;
  /// Exact endpoints as "[m1*2^e1, m2*2^e2]".
  std::string to_dyadic_string() const;

 private:
  Enclosure(BigFloat lo, BigFloat hi) : lo_(std::move(lo)), hi_(std::move(hi)) {}

  BigFloat lo_;
  BigFloat hi_;
};

}  // namespace betaret
