#pragma once

#include <gmpxx.h>

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "betaret/enclosure.hpp"
#include "betaret/polynomial.hpp"

namespace betaret {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

/// Q(theta) presented as Q[x]/(p) where p is monic and squarefree and theta is
/// the unique real root of p inside a certified isolating bracket.
///
/// p need not be irreducible. Zero tests of elements go through gcd(element, p)
/// so that an element vanishing at theta is recognised even when p has other
/// factors.
class NumberField : public std::enable_shared_from_this<NumberField> {
 public:
  /// The field Q, presented as Q[x]/(x). Elements are rational constants.
  static FieldPtr rationals();

  /// Builds the field of the unique root of `p` in (lo, hi). The polynomial is
  /// made squarefree and monic. Throws NoSignChange / MultipleRoots.
  /// A linear squarefree part yields rationals(); use `root_value` for the root.
  static FieldPtr create(const Polynomial& p, const mpq_class& lo, const mpq_class& hi);

  int degree() const { return modulus_.degree(); }
  bool is_rationals() const { return degree() == 1; }
  const Polynomial& modulus() const { return modulus_; }

  /// Enclosure of theta of width at most 2^-bits, endpoints exact dyadics.
  Enclosure root(mpfr_prec_t bits) const;
  /// Current isolating bracket (strict opposite signs of p at the ends).
  std::pair<mpq_class, mpq_class> bracket() const;

  /// True when both fields present the same root of the same polynomial.
  bool equivalent(const NumberField& other) const;

  /// Exact sign test p-relative: does q(theta) vanish?
  bool vanishes_at_root(const Polynomial& q) const;

 private:
  NumberField(Polynomial modulus, mpq_class lo, mpq_class hi, int sign_lo);
  void refine_locked(mpfr_prec_t bits) const;
  void bisect_locked() const;

  Polynomial modulus_;
  mutable std::mutex mutex_;
  mutable mpq_class lo_;
  mutable mpq_class hi_;
  int sign_lo_;
};

/// Element of a NumberField: sum coeffs[i] * theta^i, i < degree.
class FieldElem {
 public:
  FieldElem();  // rational zero
  FieldElem(FieldPtr field, std::vector<mpq_class> coeffs);
  static FieldElem rational(const mpq_class& q);
  static FieldElem generator(const FieldPtr& field);

  const FieldPtr& field() const { return field_; }
  const std::vector<mpq_class>& coeffs() const { return coeffs_; }
  Polynomial as_polynomial() const { return Polynomial(coeffs_); }

  /// Structural zero: every coefficient vanishes.
  bool is_zero() const;
  /// Exact test of value == 0 (agrees with is_zero for irreducible moduli).
  bool vanishes() const;
  /// Value lies in Q (all non-constant coefficients zero).
  bool is_rational() const;
  const mpq_class& constant_term() const { return coeffs_.front(); }
  /// Largest coefficient size in bits (numerator + denominator).
  std::size_t bit_size() const;

  /// Encloses the value using theta refined to `bits` and arithmetic at `bits`.
  Enclosure evaluate(mpfr_prec_t bits) const;

  FieldElem operator-() const;
  FieldElem inverse() const;  // throws DivisionByZero when the value is 0

  friend FieldElem operator+(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator-(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator*(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator/(const FieldElem& a, const FieldElem& b) { return a * b.inverse(); }
  /// Structural equality after bringing both operands into a common field.
  friend bool operator==(const FieldElem& a, const FieldElem& b);

 private:
  FieldPtr field_;
  std::vector<mpq_class> coeffs_;
};

/// Brings both operands into one field when possible (same field, equivalent
/// presentations, or one side rational). Returns nullopt otherwise.
std::optional<std::pair<FieldElem, FieldElem>> unify(const FieldElem& a, const FieldElem& b);

}  // namespace betaret
