#include "betaret/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "betaret/error.hpp"

namespace betaret {

Polynomial::Polynomial(std::vector<mpq_class> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
  trim();
}

Polynomial Polynomial::from_integers(const std::vector<long>& coeffs) {
  std::vector<mpq_class> q;
  q.reserve(coeffs.size());
  for (long c : coeffs) q.emplace_back(c);
  return Polynomial(std::move(q));
}

Polynomial Polynomial::constant(const mpq_class& c) { return Polynomial({c}); }

Polynomial Polynomial::monomial(const mpq_class& c, int degree) {
  std::vector<mpq_class> q(static_cast<std::size_t>(degree) + 1);
  q.back() = c;
  return Polynomial(std::move(q));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

mpq_class Polynomial::coeff(int i) const {
  if (i < 0 || i > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(i)];
}

bool Polynomial::has_integer_coeffs() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const mpq_class& c) { return c.get_den() == 1; });
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  std::vector<mpq_class> q = coeffs_;
  const mpq_class lead = leading();
  for (auto& c : q) c /= lead;
  return Polynomial(std::move(q));
}

Polynomial Polynomial::derivative() const {
  if (degree() < 1) return {};
  std::vector<mpq_class> q(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) q[i - 1] = coeffs_[i] * static_cast<long>(i);
  return Polynomial(std::move(q));
}

Polynomial Polynomial::squarefree() const {
  if (degree() < 1) return monic();
  const Polynomial g = gcd(*this, derivative());
  return divmod(g).first.monic();
}

mpq_class Polynomial::eval(const mpq_class& x) const {
  mpq_class acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  acc.canonicalize();
  return acc;
}

Enclosure Polynomial::eval(const Enclosure& x) const {
  const mpfr_prec_t prec = x.precision();
  Enclosure acc = Enclosure::from_long(0, prec);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * x + Enclosure::from_rational(*it, prec);
  }
  return acc;
}

int Polynomial::sign_at(const mpq_class& x) const {
  // Interval evaluation settles almost every case without exact arithmetic.
  const mpfr_prec_t prec =
      std::max<mpfr_prec_t>(kMinPrecision, 32 + static_cast<mpfr_prec_t>(
                                                    mpz_sizeinbase(x.get_num_mpz_t(), 2) +
                                                    mpz_sizeinbase(x.get_den_mpz_t(), 2)));
  if (mpz_sizeinbase(x.get_den_mpz_t(), 2) < 1u << 14) {
    const int s = eval(Enclosure::from_rational(x, prec)).certain_sign();
    if (s != 0) return s;
  }
  return sgn(eval(x));
}

Polynomial Polynomial::operator-() const {
  std::vector<mpq_class> q = coeffs_;
  for (auto& c : q) c = -c;
  return Polynomial(std::move(q));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<mpq_class> q(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (i < a.coeffs_.size()) q[i] += a.coeffs_[i];
    if (i < b.coeffs_.size()) q[i] += b.coeffs_[i];
  }
  return Polynomial(std::move(q));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpq_class> q(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (sgn(a.coeffs_[i]) == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) q[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(q));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  if (degree() < divisor.degree()) return {Polynomial{}, *this};
  std::vector<mpq_class> rem = coeffs_;
  const int dd = divisor.degree();
  std::vector<mpq_class> quot(static_cast<std::size_t>(degree() - dd) + 1);
  const mpq_class& lead = divisor.leading();
  for (int i = degree(); i >= dd; --i) {
    mpq_class factor = rem[static_cast<std::size_t>(i)] / lead;
    if (sgn(factor) == 0) continue;
    quot[static_cast<std::size_t>(i - dd)] = factor;
    for (int j = 0; j <= dd; ++j) {
      rem[static_cast<std::size_t>(i - dd + j)] -= factor * divisor.coeffs_[static_cast<std::size_t>(j)];
    }
  }
  rem.resize(static_cast<std::size_t>(dd));
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

std::string Polynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    mpq_class c = coeffs_[static_cast<std::size_t>(i)];
    if (sgn(c) == 0) continue;
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    first = false;
    mpq_class a = abs(c);
    const bool unit = (a == 1);
    if (!unit || i == 0) {
      os << a.get_str();
      if (i > 0) os << "*";
    }
    if (i >= 1) os << "x";
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

namespace {

class PolyParser {
 public:
  explicit PolyParser(std::string_view text) : text_(text) {}

  Polynomial parse() {
    Polynomial acc;
    skip_ws();
    bool first = true;
    while (pos_ < text_.size()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = (peek() == '-') ? -1 : 1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      acc = acc + term(sign);
      skip_ws();
    }
    if (first) fail("empty polynomial");
    return acc;
  }

 private:
  Polynomial term(int sign) {
    mpq_class coef = sign;
    bool have_number = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coef *= number();
      have_number = true;
      skip_ws();
      if (peek() == '/') {
        ++pos_;
        skip_ws();
        coef /= number();
        skip_ws();
      }
      if (peek() == '*') {
        ++pos_;
        skip_ws();
      }
    }
    int power = 0;
    if (peek() == 'x' || peek() == 'X') {
      ++pos_;
      power = 1;
      skip_ws();
      if (peek() == '^') {
        ++pos_;
        skip_ws();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected exponent");
        power = static_cast<int>(number().get_num().get_si());
      } else if (peek() == '*' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '*') {
        pos_ += 2;
        skip_ws();
        power = static_cast<int>(number().get_num().get_si());
      }
    } else if (!have_number) {
      fail("expected a term");
    }
    return Polynomial::monomial(coef, power);
  }

  mpq_class number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return mpq_class(mpz_class(std::string(text_.substr(start, pos_ - start)), 10));
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const char* what) const {
    throw Error(ErrorCode::Parse, std::string(what) + " at position " + std::to_string(pos_) +
                                      " in '" + std::string(text_) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial Polynomial::parse(std::string_view text) { return PolyParser(text).parse(); }

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a, y = b;
  while (!y.is_zero()) {
    Polynomial r = x % y;
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

ExtendedGcd extended_gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial r0 = a, r1 = b;
  Polynomial s0 = Polynomial::constant(1), s1;
  Polynomial t0, t1 = Polynomial::constant(1);
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Polynomial s2 = s0 - q * s1;
    Polynomial t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const Polynomial scale = Polynomial::constant(1 / r0.leading());
  return {r0 * scale, s0 * scale, t0 * scale};
}

std::vector<Polynomial> sturm_chain(const Polynomial& p) {
  std::vector<Polynomial> chain{p, p.derivative()};
  while (!chain.back().is_zero() && chain.back().degree() > 0) {
    Polynomial r = chain[chain.size() - 2] % chain.back();
    if (r.is_zero()) break;
    chain.push_back(-r);
  }
  return chain;
}

namespace {

int sign_variations(const std::vector<Polynomial>& chain, const mpq_class& x) {
  int variations = 0;
  int last = 0;
  for (const auto& q : chain) {
    const int s = sgn(q.eval(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++variations;
    last = s;
  }
  return variations;
}

}  // namespace

int count_roots(const std::vector<Polynomial>& chain, const mpq_class& lo, const mpq_class& hi) {
  return sign_variations(chain, lo) - sign_variations(chain, hi);
}

}  // namespace betaret
