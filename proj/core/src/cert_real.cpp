#include "betaret/cert_real.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "betaret/error.hpp"

namespace betaret {

std::string_view to_string(Ordering o) {
  switch (o) {
    case Ordering::Less: return "Less";
    case Ordering::Equal: return "Equal";
    case Ordering::Greater: return "Greater";
    case Ordering::Unknown: return "Unknown";
  }
  return "Unknown";
}

namespace {

// Bits of magnitude carried by the largest coefficient; evaluating at
// precision p loses about this many bits to cancellation.
mpfr_prec_t magnitude_bits(const FieldElem& e) {
  long out = 0;
  for (const auto& c : e.coeffs()) {
    if (sgn(c) == 0) continue;
    const long m = static_cast<long>(mpz_sizeinbase(c.get_num_mpz_t(), 2)) -
                   static_cast<long>(mpz_sizeinbase(c.get_den_mpz_t(), 2)) + 1;
    out = std::max(out, m);
  }
  return static_cast<mpfr_prec_t>(out);
}

Enclosure evaluate_at(const FieldElem& e, mpfr_prec_t bits) {
  if (e.is_rational()) return Enclosure::from_rational(e.constant_term(), bits);
  return e.evaluate(bits + magnitude_bits(e) + 16).with_precision(bits);
}

}  // namespace

CertReal::CertReal() : enc_(), exact_(FieldElem()) {}

CertReal::CertReal(Enclosure enc, std::optional<FieldElem> exact)
    : enc_(std::move(enc)), exact_(std::move(exact)) {}

CertReal CertReal::from_long(long v) { return from_rational(mpq_class(v)); }

CertReal CertReal::from_rational(const mpq_class& q) {
  return CertReal(Enclosure::from_rational(q), FieldElem::rational(q));
}

CertReal CertReal::from_exact(FieldElem value, mpfr_prec_t bits) {
  Enclosure enc = evaluate_at(value, std::max(bits, kMinPrecision));
  return CertReal(std::move(enc), std::move(value));
}

CertReal CertReal::from_enclosure(Enclosure enc) { return CertReal(std::move(enc), std::nullopt); }

CertReal CertReal::parse_rational(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw Error(ErrorCode::Parse, "empty number");
  try {
    if (auto slash = s.find('/'); slash != std::string::npos) {
      mpq_class q(mpz_class(s.substr(0, slash), 10), mpz_class(s.substr(slash + 1), 10));
      if (q.get_den() == 0) throw Error(ErrorCode::Parse, "zero denominator in '" + s + "'");
      q.canonicalize();
      return from_rational(q);
    }
    long exp10 = 0;
    if (auto e = s.find_first_of("eE"); e != std::string::npos) {
      exp10 = std::stol(s.substr(e + 1));
      s = s.substr(0, e);
    }
    bool negative = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
      negative = s[0] == '-';
      s = s.substr(1);
    }
    std::string digits;
    bool seen_point = false;
    for (char c : s) {
      if (c == '.') {
        if (seen_point) throw Error(ErrorCode::Parse, "two decimal points");
        seen_point = true;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        digits.push_back(c);
        if (seen_point) --exp10;
      } else {
        throw Error(ErrorCode::Parse, std::string("unexpected character '") + c + "'");
      }
    }
    if (digits.empty()) throw Error(ErrorCode::Parse, "no digits");
    mpq_class q{mpz_class(digits, 10)};
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
    if (exp10 >= 0) q *= p10;
    else q /= p10;
    if (negative) q = -q;
    q.canonicalize();
    return from_rational(q);
  } catch (const std::invalid_argument&) {
    throw Error(ErrorCode::Parse, "malformed number '" + std::string(text) + "'");
  } catch (const std::out_of_range&) {
    throw Error(ErrorCode::Parse, "number out of range '" + std::string(text) + "'");
  }
}

std::optional<mpq_class> CertReal::as_rational() const {
  if (exact_ && exact_->is_rational()) return exact_->constant_term();
  return std::nullopt;
}

CertReal CertReal::refined(mpfr_prec_t bits) const {
  if (!exact_) return *this;
  Enclosure fresh = evaluate_at(*exact_, bits);
  return CertReal(fresh.intersect(enc_), exact_);
}

CertReal CertReal::combine(Enclosure enc, std::optional<FieldElem> exact) {
  if (exact) {
    const mpfr_prec_t prec = enc.precision();
    if (exact->is_rational()) {
      enc = Enclosure::from_rational(exact->constant_term(), prec);
    } else if (enc.accuracy_bits() < static_cast<double>(prec) / 2) {
      enc = evaluate_at(*exact, prec);
    }
  }
  return CertReal(std::move(enc), std::move(exact));
}

double CertReal::approx() const { return mpfr_get_d(enc_.lo().get(), MPFR_RNDN) / 2 +
                                         mpfr_get_d(enc_.hi().get(), MPFR_RNDN) / 2; }

std::string CertReal::to_decimal(int digits) const {
  const auto bits = static_cast<mpfr_prec_t>(std::ceil(digits * 3.33)) + 24;
  return refined(std::max(bits, precision())).enclosure().to_decimal(digits);
}

CertReal CertReal::operator-() const {
  std::optional<FieldElem> e;
  if (exact_) e = -*exact_;
  return CertReal(-enc_, std::move(e));
}

namespace {

std::optional<std::pair<FieldElem, FieldElem>> exact_pair(const CertReal& a, const CertReal& b) {
  if (!a.exact() || !b.exact()) return std::nullopt;
  return unify(*a.exact(), *b.exact());
}

}  // namespace

CertReal operator+(const CertReal& a, const CertReal& b) {
  std::optional<FieldElem> e;
  if (auto p = exact_pair(a, b)) e = p->first + p->second;
  return CertReal::combine(a.enc_ + b.enc_, std::move(e));
}

CertReal operator-(const CertReal& a, const CertReal& b) {
  std::optional<FieldElem> e;
  if (auto p = exact_pair(a, b)) e = p->first - p->second;
  return CertReal::combine(a.enc_ - b.enc_, std::move(e));
}

CertReal operator*(const CertReal& a, const CertReal& b) {
  std::optional<FieldElem> e;
  if (auto p = exact_pair(a, b)) e = p->first * p->second;
  return CertReal::combine(a.enc_ * b.enc_, std::move(e));
}

CertReal operator/(const CertReal& a, const CertReal& b) {
  if (b.exact_ && b.exact_->vanishes()) throw Error(ErrorCode::DivisionByZero, "exact zero divisor");
  CertReal divisor = b;
  if (divisor.enc_.contains_zero()) {
    if (!divisor.exact_) {
      throw Error(ErrorCode::DivisionBySignUnknown, "divisor sign cannot be certified");
    }
    // Exact and nonzero: refinement must eventually exclude zero.
    mpfr_prec_t bits = std::max(divisor.precision(), kMinPrecision);
    while (divisor.enc_.contains_zero()) {
      bits *= 2;
      divisor = b.refined(bits);
    }
  }
  std::optional<FieldElem> e;
  if (auto p = exact_pair(a, b)) e = p->first / p->second;
  return CertReal::combine(a.enc_ / divisor.enc_, std::move(e));
}

Ordering compare(const CertReal& a, const CertReal& b, mpfr_prec_t max_bits) {
  auto decide = [](const Enclosure& d) -> std::optional<Ordering> {
    const int s = d.certain_sign();
    if (s > 0) return Ordering::Greater;
    if (s < 0) return Ordering::Less;
    return std::nullopt;
  };
  if (auto o = decide(a.enclosure() - b.enclosure())) return *o;

  if (auto p = exact_pair(a, b)) {
    const FieldElem diff = p->first - p->second;
    if (diff.vanishes()) return Ordering::Equal;
    // A nonzero algebraic difference separates from zero at finite precision,
    // but the ceiling still applies.
    mpfr_prec_t bits = std::max(a.precision(), b.precision());
    while (bits < max_bits) {
      bits = std::min(bits * 2, max_bits);
      if (auto o = decide(evaluate_at(diff, bits))) return *o;
    }
    return Ordering::Unknown;
  }
  if (!a.is_exact() && !b.is_exact()) return Ordering::Unknown;

  mpfr_prec_t bits = std::max({a.precision(), b.precision(), kMinPrecision});
  while (bits < max_bits) {
    bits = std::min(bits * 2, max_bits);
    if (auto o = decide(a.refined(bits).enclosure() - b.refined(bits).enclosure())) return *o;
  }
  return Ordering::Unknown;
}

std::optional<int> sign(const CertReal& x, mpfr_prec_t max_bits) {
  switch (compare(x, CertReal(), max_bits)) {
    case Ordering::Less: return -1;
    case Ordering::Equal: return 0;
    case Ordering::Greater: return 1;
    case Ordering::Unknown: break;
  }
  return std::nullopt;
}

CertReal isolate_root(const Polynomial& p, const mpq_class& lo, const mpq_class& hi,
                      mpfr_prec_t bits) {
  FieldPtr field = NumberField::create(p, lo, hi);
  if (field->is_rationals()) {
    const Polynomial m = p.squarefree();
    return CertReal::from_rational(-m.coeff(0));
  }
  // A few guard bits so that rounding the bracket keeps the width within 2^-bits.
  const mpfr_prec_t prec = std::max(bits, kMinPrecision) + 8;
  return CertReal::from_exact(FieldElem::generator(field), prec);
}

}  // namespace betaret
