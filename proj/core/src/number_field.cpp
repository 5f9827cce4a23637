#include "betaret/number_field.hpp"

#include <algorithm>

#include "betaret/error.hpp"

namespace betaret {

namespace {

// Approximate -log2(w) for a positive rational w.
long precision_of_width(const mpq_class& w) {
  return static_cast<long>(mpz_sizeinbase(w.get_den_mpz_t(), 2)) -
         static_cast<long>(mpz_sizeinbase(w.get_num_mpz_t(), 2));
}

bool width_at_most(const mpq_class& lo, const mpq_class& hi, mpfr_prec_t bits) {
  mpq_class w = hi - lo;
  mpz_class scale = 1;
  scale <<= static_cast<mp_bitcnt_t>(bits);
  return w * scale <= 1;
}

void horner(const Polynomial& p, const BigFloat& x, BigFloat& value, BigFloat& slope) {
  const mpfr_prec_t prec = x.precision();
  value = BigFloat(prec);
  slope = BigFloat(prec);
  BigFloat c(prec);
  const auto& cs = p.coeffs();
  for (auto it = cs.rbegin(); it != cs.rend(); ++it) {
    mpfr_mul(slope.get(), slope.get(), x.get(), MPFR_RNDN);
    mpfr_add(slope.get(), slope.get(), value.get(), MPFR_RNDN);
    mpfr_mul(value.get(), value.get(), x.get(), MPFR_RNDN);
    mpfr_set_q(c.get(), it->get_mpq_t(), MPFR_RNDN);
    mpfr_add(value.get(), value.get(), c.get(), MPFR_RNDN);
  }
}

}  // namespace

NumberField::NumberField(Polynomial modulus, mpq_class lo, mpq_class hi, int sign_lo)
    : modulus_(std::move(modulus)), lo_(std::move(lo)), hi_(std::move(hi)), sign_lo_(sign_lo) {}

FieldPtr NumberField::rationals() {
  static const FieldPtr q(new NumberField(Polynomial::from_integers({0, 1}), -1, 1, -1));
  return q;
}

FieldPtr NumberField::create(const Polynomial& p, const mpq_class& lo, const mpq_class& hi) {
  if (p.degree() < 1) throw Error(ErrorCode::InvalidArgument, "polynomial must have degree >= 1");
  if (lo >= hi) throw Error(ErrorCode::InvalidArgument, "empty bracket");
  Polynomial sf = p.squarefree();
  const int s_lo = sf.sign_at(lo);
  const int s_hi = sf.sign_at(hi);
  if (s_lo == 0 || s_hi == 0 || s_lo == s_hi) {
    throw Error(ErrorCode::NoSignChange,
                p.to_string() + " has no sign change on (" + lo.get_str() + ", " + hi.get_str() + ")");
  }
  if (count_roots(sturm_chain(sf), lo, hi) > 1) {
    throw Error(ErrorCode::MultipleRoots,
                p.to_string() + " has several roots in (" + lo.get_str() + ", " + hi.get_str() + ")");
  }
  if (sf.degree() == 1) return rationals();
  return FieldPtr(new NumberField(std::move(sf), lo, hi, s_lo));
}

void NumberField::bisect_locked() const {
  mpq_class mid = (lo_ + hi_) / 2;
  mid.canonicalize();
  const int s = modulus_.sign_at(mid);
  if (s == 0) {
    // Only possible for a rational root, which a squarefree modulus of
    // degree >= 2 can still have; collapse onto it.
    lo_ = mid;
    hi_ = mid;
    return;
  }
  if (s == sign_lo_) lo_ = mid;
  else hi_ = mid;
}

void NumberField::refine_locked(mpfr_prec_t bits) const {
  if (is_rationals()) return;
  while (lo_ != hi_ && !width_at_most(lo_, hi_, bits)) {
    const long cur = precision_of_width(hi_ - lo_);
    if (cur < 48) {
      bisect_locked();
      continue;
    }
    // Newton from the midpoint, then certify a tight bracket by signs.
    const long want = std::min<long>(static_cast<long>(bits) + 4, 2 * cur - 16);
    BigFloat x(static_cast<mpfr_prec_t>(want + 64));
    mpq_class mid = (lo_ + hi_) / 2;
    mpfr_set_q(x.get(), mid.get_mpq_t(), MPFR_RNDN);
    BigFloat value, slope, step(x.precision());
    for (int iter = 0; iter < 3; ++iter) {
      horner(modulus_, x, value, slope);
      if (mpfr_zero_p(slope.get())) break;
      mpfr_div(step.get(), value.get(), slope.get(), MPFR_RNDN);
      mpfr_sub(x.get(), x.get(), step.get(), MPFR_RNDN);
    }
    mpq_class centre = x.to_rational();
    mpq_class eps = 1;
    eps /= mpq_class(mpz_class(1) << static_cast<mp_bitcnt_t>(want));
    const mpq_class a = centre - eps;
    const mpq_class b = centre + eps;
    if (a > lo_ && b < hi_ && modulus_.sign_at(a) == sign_lo_ && modulus_.sign_at(b) == -sign_lo_) {
      lo_ = a;
      hi_ = b;
    } else {
      for (int i = 0; i < 8; ++i) bisect_locked();
    }
  }
}

Enclosure NumberField::root(mpfr_prec_t bits) const {
  if (is_rationals()) return Enclosure::from_long(0, bits);
  std::lock_guard<std::mutex> lock(mutex_);
  refine_locked(bits);
  return Enclosure::from_bounds(lo_, hi_, bits + 16);
}

std::pair<mpq_class, mpq_class> NumberField::bracket() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return {lo_, hi_};
}

bool NumberField::equivalent(const NumberField& other) const {
  if (this == &other) return true;
  if (!(modulus_ == other.modulus_)) return false;
  auto [a_lo, a_hi] = bracket();
  auto [b_lo, b_hi] = other.bracket();
  const mpq_class lo = std::max(a_lo, b_lo);
  const mpq_class hi = std::min(a_hi, b_hi);
  if (lo > hi) return false;
  if (lo == hi) return modulus_.sign_at(lo) == 0;
  // Each bracket isolates one root; the two agree iff the overlap holds one.
  return count_roots(sturm_chain(modulus_), lo, hi) >= 1;
}

bool NumberField::vanishes_at_root(const Polynomial& q) const {
  if (is_rationals()) return sgn(q.coeff(0)) == 0;
  const Polynomial r = q % modulus_;
  if (r.is_zero()) return true;
  const Polynomial g = gcd(r, modulus_);
  if (g.degree() < 1) return false;
  auto [lo, hi] = bracket();
  if (lo == hi) return g.sign_at(lo) == 0;
  // g divides the squarefree modulus, so its roots in the bracket are simple
  // and can only be theta itself.
  return g.sign_at(lo) * g.sign_at(hi) < 0;
}

FieldElem::FieldElem() : field_(NumberField::rationals()), coeffs_{mpq_class(0)} {}

FieldElem::FieldElem(FieldPtr field, std::vector<mpq_class> coeffs) : field_(std::move(field)) {
  const auto d = static_cast<std::size_t>(field_->degree());
  if (coeffs.size() > d) {
    Polynomial reduced = Polynomial(std::move(coeffs)) % field_->modulus();
    coeffs = reduced.coeffs();
  }
  coeffs.resize(d);
  for (auto& c : coeffs) c.canonicalize();
  coeffs_ = std::move(coeffs);
}

FieldElem FieldElem::rational(const mpq_class& q) { return FieldElem(NumberField::rationals(), {q}); }

FieldElem FieldElem::generator(const FieldPtr& field) {
  if (field->is_rationals()) throw Error(ErrorCode::InvalidArgument, "Q has no generator");
  return FieldElem(field, {mpq_class(0), mpq_class(1)});
}

bool FieldElem::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const mpq_class& c) { return sgn(c) == 0; });
}

bool FieldElem::vanishes() const {
  if (is_zero()) return true;
  if (is_rational()) return false;
  return field_->vanishes_at_root(as_polynomial());
}

bool FieldElem::is_rational() const {
  return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const mpq_class& c) { return sgn(c) == 0; });
}

std::size_t FieldElem::bit_size() const {
  std::size_t out = 0;
  for (const auto& c : coeffs_) {
    out = std::max(out, mpz_sizeinbase(c.get_num_mpz_t(), 2) + mpz_sizeinbase(c.get_den_mpz_t(), 2));
  }
  return out;
}

Enclosure FieldElem::evaluate(mpfr_prec_t bits) const {
  bits = std::max(bits, kMinPrecision);
  if (is_rational()) return Enclosure::from_rational(coeffs_.front(), bits);
  const Enclosure theta = field_->root(bits).with_precision(bits);
  Enclosure acc = Enclosure::from_long(0, bits);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * theta + Enclosure::from_rational(*it, bits);
  }
  return acc;
}

FieldElem FieldElem::operator-() const {
  std::vector<mpq_class> c = coeffs_;
  for (auto& x : c) x = -x;
  return FieldElem(field_, std::move(c));
}

FieldElem FieldElem::inverse() const {
  if (vanishes()) throw Error(ErrorCode::DivisionByZero, "inverse of zero field element");
  if (is_rational()) {
    mpq_class inv = 1 / coeffs_.front();
    return FieldElem(field_, {inv});
  }
  const Polynomial a = as_polynomial();
  Polynomial m = field_->modulus();
  ExtendedGcd eg = extended_gcd(a, m);
  if (eg.g.degree() > 0) {
    // theta is not a root of the common factor, so it is a root of m / g,
    // and a is invertible modulo that cofactor.
    m = m.divmod(eg.g).first;
    eg = extended_gcd(a, m);
  }
  return FieldElem(field_, (eg.s % m).coeffs());
}

namespace {

FieldElem embed(const FieldElem& rational, const FieldPtr& field) {
  return FieldElem(field, {rational.constant_term()});
}

}  // namespace

std::optional<std::pair<FieldElem, FieldElem>> unify(const FieldElem& a, const FieldElem& b) {
  if (a.field() == b.field()) return std::make_pair(a, b);
  if (a.is_rational()) return std::make_pair(embed(a, b.field()), b);
  if (b.is_rational()) return std::make_pair(a, embed(b, a.field()));
  if (a.field()->equivalent(*b.field())) return std::make_pair(a, FieldElem(a.field(), b.coeffs()));
  return std::nullopt;
}

namespace {

std::pair<FieldElem, FieldElem> must_unify(const FieldElem& a, const FieldElem& b) {
  auto u = unify(a, b);
  if (!u) throw Error(ErrorCode::InvalidArgument, "field elements from unrelated fields");
  return *std::move(u);
}

}  // namespace

FieldElem operator+(const FieldElem& a, const FieldElem& b) {
  auto [x, y] = must_unify(a, b);
  std::vector<mpq_class> c = x.coeffs_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += y.coeffs_[i];
  return FieldElem(x.field_, std::move(c));
}

FieldElem operator-(const FieldElem& a, const FieldElem& b) { return a + (-b); }

FieldElem operator*(const FieldElem& a, const FieldElem& b) {
  auto [x, y] = must_unify(a, b);
  if (x.field_->is_rationals()) return FieldElem(x.field_, {x.coeffs_[0] * y.coeffs_[0]});
  if (y.is_rational()) {
    std::vector<mpq_class> c = x.coeffs_;
    for (auto& v : c) v *= y.coeffs_[0];
    return FieldElem(x.field_, std::move(c));
  }
  if (x.is_rational()) {
    std::vector<mpq_class> c = y.coeffs_;
    for (auto& v : c) v *= x.coeffs_[0];
    return FieldElem(x.field_, std::move(c));
  }
  const Polynomial prod = x.as_polynomial() * y.as_polynomial();
  return FieldElem(x.field_, (prod % x.field_->modulus()).coeffs());
}

bool operator==(const FieldElem& a, const FieldElem& b) {
  auto u = unify(a, b);
  if (!u) return false;
  return u->first.coeffs_ == u->second.coeffs_;
}

}  // namespace betaret
