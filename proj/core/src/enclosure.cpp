#include "betaret/enclosure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "betaret/error.hpp"

namespace betaret {

BigFloat::BigFloat(mpfr_prec_t prec) {
  mpfr_init2(value_, prec);
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

mpq_class BigFloat::to_rational() const {
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), value_);
  return q;
}

namespace {

BigFloat rounded(const mpq_class& q, mpfr_prec_t prec, mpfr_rnd_t rnd) {
  BigFloat out(prec);
  mpfr_set_q(out.get(), q.get_mpq_t(), rnd);
  return out;
}

mpfr_prec_t joint_precision(const Enclosure& a, const Enclosure& b) {
  return std::max({a.precision(), b.precision(), kMinPrecision});
}

}  // namespace

Enclosure::Enclosure() : lo_(kMinPrecision), hi_(kMinPrecision) {}

Enclosure Enclosure::from_long(long v, mpfr_prec_t prec) {
  BigFloat lo(prec), hi(prec);
  mpfr_set_si(lo.get(), v, MPFR_RNDD);
  mpfr_set_si(hi.get(), v, MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Enclosure Enclosure::from_rational(const mpq_class& q, mpfr_prec_t prec) {
  return {rounded(q, prec, MPFR_RNDD), rounded(q, prec, MPFR_RNDU)};
}

Enclosure Enclosure::from_bounds(const mpq_class& lo, const mpq_class& hi, mpfr_prec_t prec) {
  if (lo > hi) throw Error(ErrorCode::InvalidArgument, "enclosure bounds out of order");
  return {rounded(lo, prec, MPFR_RNDD), rounded(hi, prec, MPFR_RNDU)};
}

Enclosure Enclosure::hull(const Enclosure& a, const Enclosure& b) {
  const mpfr_prec_t prec = joint_precision(a, b);
  BigFloat lo(prec), hi(prec);
  mpfr_min(lo.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_max(hi.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

mpq_class Enclosure::midpoint() const {
  mpq_class m = (lo_rational() + hi_rational()) / 2;
  m.canonicalize();
  return m;
}

double Enclosure::width() const {
  BigFloat w(53);
  mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  return w.to_double();
}

double Enclosure::accuracy_bits() const {
  if (is_point()) return std::numeric_limits<double>::infinity();
  BigFloat w(53);
  mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  long exp = 0;
  const double mant = mpfr_get_d_2exp(&exp, w.get(), MPFR_RNDU);
  return -(std::log2(mant) + static_cast<double>(exp));
}

bool Enclosure::contains(const mpq_class& q) const {
  return mpfr_cmp_q(lo_.get(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), q.get_mpq_t()) >= 0;
}

bool Enclosure::contains(const Enclosure& other) const {
  return mpfr_lessequal_p(lo_.get(), other.lo_.get()) &&
         mpfr_greaterequal_p(hi_.get(), other.hi_.get());
}

bool Enclosure::contains_zero() const {
  return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0;
}

bool Enclosure::is_point() const { return mpfr_equal_p(lo_.get(), hi_.get()) != 0; }

int Enclosure::certain_sign() const {
  if (mpfr_sgn(lo_.get()) > 0) return 1;
  if (mpfr_sgn(hi_.get()) < 0) return -1;
  return 0;
}

bool Enclosure::overlaps(const Enclosure& other) const {
  return mpfr_lessequal_p(lo_.get(), other.hi_.get()) &&
         mpfr_lessequal_p(other.lo_.get(), hi_.get());
}

Enclosure Enclosure::intersect(const Enclosure& other) const {
  if (!overlaps(other)) return *this;
  const mpfr_prec_t prec = joint_precision(*this, other);
  BigFloat lo(prec), hi(prec);
  mpfr_max(lo.get(), lo_.get(), other.lo_.get(), MPFR_RNDD);
  mpfr_min(hi.get(), hi_.get(), other.hi_.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Enclosure Enclosure::with_precision(mpfr_prec_t prec) const {
  BigFloat lo(prec), hi(prec);
  mpfr_set(lo.get(), lo_.get(), MPFR_RNDD);
  mpfr_set(hi.get(), hi_.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Enclosure Enclosure::operator-() const {
  BigFloat lo(precision()), hi(precision());
  mpfr_neg(lo.get(), hi_.get(), MPFR_RNDD);
  mpfr_neg(hi.get(), lo_.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Enclosure operator+(const Enclosure& a, const Enclosure& b) {
  const mpfr_prec_t prec = joint_precision(a, b);
  BigFloat lo(prec), hi(prec);
  mpfr_add(lo.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_add(hi.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Enclosure operator-(const Enclosure& a, const Enclosure& b) {
  const mpfr_prec_t prec = joint_precision(a, b);
  BigFloat lo(prec), hi(prec);
  mpfr_sub(lo.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
  mpfr_sub(hi.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Enclosure operator*(const Enclosure& a, const Enclosure& b) {
  const mpfr_prec_t prec = joint_precision(a, b);
  BigFloat lo(prec), hi(prec), t(prec);
  bool first = true;
  for (const BigFloat* x : {&a.lo_, &a.hi_}) {
    for (const BigFloat* y : {&b.lo_, &b.hi_}) {
      if (first) {
        mpfr_mul(lo.get(), x->get(), y->get(), MPFR_RNDD);
        mpfr_mul(hi.get(), x->get(), y->get(), MPFR_RNDU);
        first = false;
        continue;
      }
      mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDD);
      if (mpfr_less_p(t.get(), lo.get())) mpfr_set(lo.get(), t.get(), MPFR_RNDD);
      mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDU);
      if (mpfr_greater_p(t.get(), hi.get())) mpfr_set(hi.get(), t.get(), MPFR_RNDU);
    }
  }
  return {std::move(lo), std::move(hi)};
}

Enclosure operator/(const Enclosure& a, const Enclosure& b) {
  if (b.contains_zero()) {
    throw Error(ErrorCode::DivisionBySignUnknown, "divisor enclosure contains zero");
  }
  const mpfr_prec_t prec = joint_precision(a, b);
  BigFloat lo(prec), hi(prec);
  // 1/b is decreasing on either side of zero.
  mpfr_ui_div(lo.get(), 1, b.hi_.get(), MPFR_RNDD);
  mpfr_ui_div(hi.get(), 1, b.lo_.get(), MPFR_RNDU);
  return a * Enclosure(std::move(lo), std::move(hi));
}

std::string Enclosure::to_decimal(int digits) const {
  BigFloat mid(precision() + 1);
  mpfr_add(mid.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rg", digits, mid.get());
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

std::string Enclosure::to_dyadic_string() const {
  auto render = [](const BigFloat& v) {
    if (mpfr_zero_p(v.get())) return std::string("0");
    mpz_class mant;
    const mpfr_exp_t exp = mpfr_get_z_2exp(mant.get_mpz_t(), v.get());
    // Strip trailing zero bits so the representation is canonical.
    const mp_bitcnt_t tz = mpz_scan1(mant.get_mpz_t(), 0);
    mpz_class m = mant >> tz;
    std::ostringstream os;
    os << m.get_str() << "*2^" << (exp + static_cast<mpfr_exp_t>(tz));
    return os.str();
  };
  return "[" + render(lo_) + ", " + render(hi_) + "]";
}

}  // namespace betaret
