#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "betaret/error.hpp"
#include "betaret/glst.hpp"
#include "support.hpp"

using namespace betaret;
using namespace testing_support;

namespace {

CertReal pow_inv(const BetaCtx& ctx, int n) {
  CertReal p = CertReal::from_long(1);
  for (int i = 0; i < n; ++i) p = p * ctx.inv_beta();
  return p;
}

bool is_not_glst(const GlstReport& r) { return r.verdict == GlstReport::Verdict::NotGLST; }

}  // namespace

TEST(Glst, GoldenIsCertified) {
  const BetaCtx ctx(golden());
  const GlstReport r = glst_verify(ctx, 0, 8);
  EXPECT_EQ(r.verdict, GlstReport::Verdict::Certified);
  EXPECT_EQ(to_string(r.verdict), "GLST");
  EXPECT_TRUE(r.all_full);
  ASSERT_TRUE(r.branches_listed);
  EXPECT_EQ(r.branches.size(), 8u);
  // gap after 8 returns: sum_{i>8} beta^-(i+2) = beta^-9
  EXPECT_TRUE(eq(ctx, r.length_gap, pow_inv(ctx, 9)));
}

TEST(Glst, IncompleteBranchAt18) {
  const BetaCtx ctx(dec("1.8"));
  const GlstReport r = glst_verify(ctx, 0, 20);
  EXPECT_EQ(r.verdict, GlstReport::Verdict::NotGLST);
  ASSERT_TRUE(r.incomplete_witness.has_value());
  EXPECT_EQ(r.incomplete_witness->word.to_string(), "01101010");
  EXPECT_EQ(r.incomplete_witness->return_time, 8);
  EXPECT_TRUE(eq(ctx, r.incomplete_witness->domain.lo, ctx.switch_lo()));
  EXPECT_EQ(r.membership.tag, MVerdict::Tag::NonMember);
}

TEST(Glst, ReportForDigitOneMirrorsDigitZero) {
  for (const CertReal& b : {golden(), multinacci(2), dec("1.8"), dec("1.86"), dec("1.93")}) {
    const BetaCtx ctx(b);
    const GlstReport r0 = glst_verify(ctx, 0, 12);
    const GlstReport r1 = glst_verify(ctx, 1, 12);
    EXPECT_EQ(r0.verdict, r1.verdict);
    EXPECT_EQ(r0.depth, r1.depth);
    EXPECT_EQ(r0.all_full, r1.all_full);
    EXPECT_TRUE(eq(ctx, r0.length_gap, r1.length_gap));
    ASSERT_EQ(r0.branches_listed, r1.branches_listed);
    ASSERT_EQ(r0.branches.size(), r1.branches.size());
    for (const Branch& x : r0.branches) {
      const Itv m = reflect(ctx, x.domain);
      const auto it = std::find_if(r1.branches.begin(), r1.branches.end(),
                                   [&](const Branch& y) { return same_span(ctx, y.domain, m); });
      ASSERT_NE(it, r1.branches.end());
      EXPECT_EQ(it->word, x.word.complement());
      EXPECT_EQ(it->full, x.full);
    }
    if (r0.incomplete_witness) {
      ASSERT_TRUE(r1.incomplete_witness.has_value());
      EXPECT_EQ(r1.incomplete_witness->word, r0.incomplete_witness->word.complement());
    }
  }
}

TEST(Glst, DichotomyWithMembership) {
  std::vector<CertReal> bases = {golden(), dec("1.754"), dec("1.8"), dec("1.86"), dec("1.93"), dec("1.95")};
  for (int k = 2; k <= 6; ++k) bases.push_back(multinacci(k));
  for (int k = 2; k <= 4; ++k) bases.push_back(marker(MarkerKind::Alpha, k));
  std::mt19937_64 rng(4242);
  for (int i = 0; i < 100; ++i) {
    bases.push_back(CertReal::from_rational(random_rational(rng, mpq_class(162, 100), mpq_class(199, 100), 40)));
  }
  const int depth = 30;
  for (const CertReal& b : bases) {
    const BetaCtx ctx(b);
    const GlstReport r = glst_verify(ctx, 0, depth);
    // a return at time t uses t - 1 forced steps after T_0
    const MVerdict m = m_membership(ctx, depth - 1);
    ASSERT_NE(m.tag, MVerdict::Tag::Unknown);
    EXPECT_EQ(is_not_glst(r), m.tag == MVerdict::Tag::NonMember) << b.approx();
    if (m.tag == MVerdict::Tag::NonMember) {
      ASSERT_TRUE(r.incomplete_witness.has_value());
      EXPECT_EQ(r.incomplete_witness->return_time, m.depth + 1) << b.approx();
    }
  }
}

TEST(Glst, MultinacciCertificates) {
  for (int k = 2; k <= 6; ++k) {
    const BetaCtx ctx(multinacci(k));
    const GlstReport r = glst_verify(ctx, 0, 16);
    EXPECT_EQ(r.verdict, GlstReport::Verdict::Certified) << k;
    EXPECT_EQ(r.membership.witness, MVerdict::Witness::BoundaryHit);
    EXPECT_EQ(r.membership.word, std::vector<int>(k, 1));
  }
}

TEST(ExpectedReturn, GoldenIsBetaPlusTwo) {
  const BetaCtx ctx(golden());
  for (int d : {0, 1}) {
    const ExpectedReturn e = expected_return_time(ctx, d, 40);
    EXPECT_TRUE(e.tail_certified);
    EXPECT_EQ(ctx.cmp(e.total, ctx.beta() + CertReal::from_long(2)), Ordering::Equal);
    EXPECT_NEAR(e.total.approx(), 3.61803, 1e-4);
    EXPECT_LT(e.tail.approx(), 1e-6);
    EXPECT_GT(e.tail.approx(), 0);
  }
  // 2 beta^2 - beta is the same number
  const CertReal b = ctx.beta();
  EXPECT_TRUE(eq(ctx, CertReal::from_long(2) * b * b - b, b + CertReal::from_long(2)));
}

TEST(ExpectedReturn, GoldenPartialSumByHand) {
  // sum_{i=2}^{N} i |B_i| / |S| with |B_i| = beta^-(i+2)
  const BetaCtx ctx(golden());
  const int n = 20;
  CertReal s;
  for (int i = 2; i <= n; ++i) s = s + CertReal::from_long(i) * pow_inv(ctx, i + 2);
  s = s / ctx.switch_length();
  EXPECT_TRUE(eq(ctx, expected_return_time(ctx, 0, n).partial, s));
}

TEST(ExpectedReturn, MultinacciAgainstConcreteBranches) {
  for (int k = 2; k <= 4; ++k) {
    const BetaCtx ctx(multinacci(k));
    const ExpectedReturn e = expected_return_time(ctx, 0, 40);
    ASSERT_TRUE(e.tail_certified);
    // independent lower bound: concrete branches up to T plus (T+1) times the unreturned mass
    const int t = 14;
    const auto bs = enumerate_branches(ctx, 0, t);
    CertReal part, mass;
    for (const Branch& br : bs) {
      part = part + CertReal::from_long(br.return_time) * br.domain.length();
      mass = mass + br.domain.length();
    }
    const CertReal lower = (part + CertReal::from_long(t + 1) * (ctx.switch_length() - mass)) / ctx.switch_length();
    EXPECT_TRUE(ctx.less_equal(lower, e.total)) << k;
    // and a Monte Carlo estimate
    std::mt19937_64 rng(k);
    const BirkhoffResult mc = birkhoff_average(ctx, 0, random_in_switch(ctx, rng), 20000, 100000);
    EXPECT_NEAR(mc.mean.get_d(), e.total.approx(), 0.06 * e.total.approx()) << k;
  }
}

TEST(ExpectedReturn, RefusesIncompleteBranches) {
  try {
    expected_return_time(BetaCtx(dec("1.8")), 0, 20);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotAGlst);
  }
}

TEST(Birkhoff, GoldenSmallRun) {
  const BetaCtx ctx(golden());
  const BirkhoffResult r = birkhoff_average(ctx, 0, CertReal::parse_rational("0.7"), 5000, 10000);
  EXPECT_EQ(r.total_steps, static_cast<long>(std::lround(r.mean.get_d() * 5000)));
  EXPECT_NEAR(r.mean.get_d(), 3.618, 0.15);
}

TEST(Birkhoff, TribonacciLeftEndIsPeriodic) {
  const BetaCtx ctx(multinacci(2));
  const BirkhoffResult r = birkhoff_average(ctx, 0, ctx.inv_beta(), 200, 1000);
  EXPECT_EQ(r.mean, 3);
  EXPECT_EQ(r.exact_steps, r.total_steps);
}

TEST(Birkhoff, StartOutsideSRejected) {
  EXPECT_THROW(birkhoff_average(BetaCtx(golden()), 0, q(1, 10), 10, 100), Error);
}

TEST(Lebesgue, OneReturnStepPushesUniformToUniform) {
  const BetaCtx ctx(golden());
  const OmegaSource om = OmegaSource::all_zeros();
  std::mt19937_64 rng(1);
  const int n = 100000;
  std::vector<double> u;
  u.reserve(n);
  const double lo = ctx.switch_lo().approx();
  const double len = ctx.switch_length().approx();
  for (int i = 0; i < n; ++i) {
    const ReturnRecord r = first_return(ctx, om, 0, random_in_switch(ctx, rng), 10000);
    u.push_back((r.end.approx() - lo) / len);
  }
  std::sort(u.begin(), u.end());
  double d = 0;
  for (int i = 0; i < n; ++i) {
    d = std::max({d, (i + 1.0) / n - u[i], u[i] - static_cast<double>(i) / n});
  }
  // Kolmogorov-Smirnov critical value at significance 1e-3
  const double crit = std::sqrt(-0.5 * std::log(0.5e-3)) / std::sqrt(static_cast<double>(n));
  EXPECT_LT(d, crit);
  EXPECT_NEAR(crit, 0.00616, 1e-4);
}

TEST(Luroth, HalfUsesHalfOpenDigits) {
  // 1/2 lies in (1/3, 1/2], so the first digit is 3 and T(1/2) = 6/2 - 2 = 1
  const LurothDigits d = luroth_classic(mpq_class(1, 2), 6);
  EXPECT_EQ(d.digits, (std::vector<long>{3, 2, 2, 2, 2, 2}));
  EXPECT_FALSE(d.terminated);
}

TEST(Luroth, OneIsAllTwos) {
  const LurothDigits d = luroth_classic(mpq_class(1), 5);
  EXPECT_EQ(d.digits, std::vector<long>(5, 2));
  EXPECT_EQ(luroth_series(d.digits), mpq_class(31, 32));
}

TEST(Luroth, ReconstructionError) {
  std::mt19937_64 rng(8);
  const mpq_class bound(1, mpz_class(1) << 30);
  for (int i = 0; i < 100; ++i) {
    const long den = 2 + static_cast<long>(rng() % 1000000);
    const long num = 1 + static_cast<long>(rng() % (den - 1));
    mpq_class x(num, den);
    x.canonicalize();
    const LurothDigits d = luroth_classic(x, 30);
    ASSERT_EQ(d.digits.size(), 30u);
    mpq_class err = x - luroth_series(d.digits);
    ASSERT_GE(err, 0);
    ASSERT_LT(err, bound) << x.get_str();
  }
}

TEST(Luroth, RejectsOutOfRange) {
  EXPECT_THROW(luroth_classic(mpq_class(0), 3), Error);
  EXPECT_THROW(luroth_classic(mpq_class(3, 2), 3), Error);
}
