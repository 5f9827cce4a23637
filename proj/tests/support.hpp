#pragma once

#include <random>

#include "betaret/beta_spec.hpp"
#include "betaret/classify.hpp"
#include "betaret/dynamics.hpp"

namespace testing_support {

using namespace betaret;

inline CertReal golden() { return marker(MarkerKind::Gamma, 1); }
inline CertReal multinacci(int k) { return marker(MarkerKind::Gamma, k); }
inline CertReal q(long n, long d) { return CertReal::from_rational(mpq_class(n, d)); }
inline CertReal dec(const char* s) { return CertReal::parse_rational(s); }

inline bool eq(const BetaCtx& ctx, const CertReal& a, const CertReal& b) {
  return ctx.cmp(a, b) == Ordering::Equal;
}

// Random rational in [lo, hi] with a 2^bits grid.
inline mpq_class random_rational(std::mt19937_64& rng, const mpq_class& lo, const mpq_class& hi, int bits = 40) {
  const unsigned long long mask = (bits >= 64) ? ~0ULL : ((1ULL << bits) - 1);
  mpz_class u;
  mpz_set_ui(u.get_mpz_t(), static_cast<unsigned long>(rng() & mask));
  mpq_class t(u, mpz_class(1) << bits);
  t.canonicalize();
  mpq_class r = lo + (hi - lo) * t;
  r.canonicalize();
  return r;
}

// Random point of S, exact in the field of beta.
inline CertReal random_in_switch(const BetaCtx& ctx, std::mt19937_64& rng) {
  const mpq_class t = random_rational(rng, 0, 1, 40);
  return ctx.switch_lo() + ctx.switch_length() * CertReal::from_rational(t);
}

inline double approx(const CertReal& x) { return x.approx(); }

}  // namespace testing_support
