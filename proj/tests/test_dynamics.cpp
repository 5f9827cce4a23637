#include <gtest/gtest.h>

#include <random>

#include "betaret/error.hpp"
#include "support.hpp"

using namespace betaret;
using namespace testing_support;

namespace {

std::vector<CertReal> sample_bases(std::mt19937_64& rng, int n) {
  std::vector<CertReal> out;
  for (int i = 0; i < n; ++i) out.push_back(CertReal::from_rational(random_rational(rng, mpq_class(101, 100), mpq_class(199, 100), 30)));
  return out;
}

}  // namespace

TEST(BetaCtx, ConstantsOrderedAndMidpoint) {
  std::mt19937_64 rng(1);
  auto bases = sample_bases(rng, 50);
  bases.push_back(golden());
  bases.push_back(multinacci(2));
  bases.push_back(marker(MarkerKind::Eta, 3));
  for (const CertReal& b : bases) {
    const BetaCtx ctx(b);
    EXPECT_TRUE(ctx.less(CertReal(), ctx.switch_lo()));
    EXPECT_TRUE(ctx.less(ctx.switch_lo(), ctx.switch_mid()));
    EXPECT_TRUE(ctx.less(ctx.switch_mid(), ctx.switch_hi()));
    EXPECT_TRUE(ctx.less(ctx.switch_hi(), ctx.right_end()));
    EXPECT_TRUE(eq(ctx, ctx.switch_mid() - ctx.switch_lo(), ctx.switch_hi() - ctx.switch_mid()));
  }
}

TEST(BetaCtx, RejectsBaseOutsideOneTwo) {
  for (const char* b : {"1", "2", "0.5", "2.5"}) {
    try {
      BetaCtx ctx(dec(b));
      FAIL() << b;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
    }
  }
}

TEST(BetaCtx, GoldenSwitchRegion) {
  const BetaCtx ctx(golden());
  // 1/(beta(beta-1)) = 1 at the golden ratio
  EXPECT_TRUE(eq(ctx, ctx.switch_hi(), CertReal::from_long(1)));
  EXPECT_NEAR(ctx.switch_lo().approx(), 0.6180339887, 1e-10);
}

TEST(ApplyDigit, FixedPoints) {
  const BetaCtx ctx(dec("1.8"));
  EXPECT_TRUE(eq(ctx, apply_digit(ctx, 0, CertReal()), CertReal()));
  EXPECT_TRUE(eq(ctx, apply_digit(ctx, 1, ctx.right_end()), ctx.right_end()));
  EXPECT_TRUE(eq(ctx, invert_digit(ctx, 1, apply_digit(ctx, 1, q(3, 5))), q(3, 5)));
}

TEST(ApplyDigit, DomainCheck) {
  const BetaCtx ctx(dec("1.8"));
  try {
    apply_digit(ctx, 0, ctx.right_end(), true);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OutOfDomain);
  }
  EXPECT_NO_THROW(apply_digit(ctx, 0, ctx.right_end(), false));
}

TEST(Regions, ClassifyPoints) {
  const BetaCtx ctx(golden());
  EXPECT_EQ(classify_point(ctx, CertReal()), Region::LeftOfS);
  EXPECT_EQ(classify_point(ctx, ctx.switch_lo()), Region::SwitchBoundaryLo);
  EXPECT_EQ(classify_point(ctx, ctx.switch_hi()), Region::SwitchBoundaryHi);
  EXPECT_EQ(classify_point(ctx, q(7, 10)), Region::InteriorS);
  EXPECT_EQ(classify_point(ctx, q(3, 2)), Region::RightOfS);
  EXPECT_EQ(classify_point(ctx, CertReal::from_long(3)), Region::OutsideDomain);
  EXPECT_EQ(classify_point(ctx, q(-1, 10)), Region::OutsideDomain);
}

TEST(Regions, InexactStraddleThrows) {
  const BetaCtx ctx(golden());
  const Enclosure e = Enclosure::hull(ctx.switch_lo().enclosure(), Enclosure::from_rational(mpq_class(62, 100)));
  try {
    classify_point(ctx, CertReal::from_enclosure(Enclosure::hull(e, Enclosure::from_rational(mpq_class(61, 100)))));
    FAIL();
  } catch (const Error& e2) {
    EXPECT_EQ(e2.code(), ErrorCode::UnresolvableAtPrecision);
  }
}

TEST(Reflection, ConjugatesDigitsExactly) {
  std::mt19937_64 rng(2);
  for (const CertReal& b : sample_bases(rng, 40)) {
    const BetaCtx ctx(b);
    for (int i = 0; i < 10; ++i) {
      const CertReal x = ctx.right_end() * CertReal::from_rational(random_rational(rng, 0, 1));
      ASSERT_TRUE(eq(ctx, apply_digit(ctx, 1, reflect(ctx, x)), reflect(ctx, apply_digit(ctx, 0, x))));
    }
    EXPECT_TRUE(eq(ctx, reflect(ctx, ctx.switch_lo()), ctx.switch_hi()));
    EXPECT_TRUE(eq(ctx, reflect(ctx, ctx.switch_hi()), ctx.switch_lo()));
  }
  for (const CertReal& b : {golden(), multinacci(2)}) {
    const BetaCtx ctx(b);
    const CertReal x = random_in_switch(ctx, rng);
    const CertReal lhs = apply_digit(ctx, 1, reflect(ctx, x));
    ASSERT_TRUE(lhs.is_exact());
    EXPECT_TRUE(eq(ctx, lhs, reflect(ctx, apply_digit(ctx, 0, x))));
  }
}

TEST(Reflection, InexactOverlap) {
  const BetaCtx ctx(golden());
  const CertReal x = CertReal::from_enclosure(Enclosure::from_bounds(mpq_class(7, 10), mpq_class(7001, 10000)));
  const Enclosure a = apply_digit(ctx, 1, reflect(ctx, x)).enclosure();
  const Enclosure b = reflect(ctx, apply_digit(ctx, 0, x)).enclosure();
  EXPECT_TRUE(a.overlaps(b));
}

TEST(Steps, GreedyLazyAgreeWithKbetaOutsideS) {
  std::mt19937_64 rng(4);
  for (const CertReal& b : sample_bases(rng, 30)) {
    const BetaCtx ctx(b);
    for (int i = 0; i < 20; ++i) {
      const CertReal x = ctx.right_end() * CertReal::from_rational(random_rational(rng, 0, 1));
      const Region r = classify_point(ctx, x);
      const KStep k0 = kbeta_step(ctx, OmegaSource::all_zeros(), 0, x);
      const KStep k1 = kbeta_step(ctx, OmegaSource::all_ones(), 0, x);
      if (in_switch(r)) {
        EXPECT_TRUE(k0.consumed && k1.consumed);
        // greedy takes T_1 as soon as possible, lazy as late as possible
        EXPECT_TRUE(eq(ctx, greedy_step(ctx, x), k1.next));
        EXPECT_TRUE(eq(ctx, lazy_step(ctx, x), k0.next));
      } else {
        EXPECT_FALSE(k0.consumed);
        EXPECT_TRUE(eq(ctx, greedy_step(ctx, x), k0.next));
        EXPECT_TRUE(eq(ctx, lazy_step(ctx, x), k0.next));
        EXPECT_TRUE(eq(ctx, k0.next, k1.next));
      }
    }
  }
}

TEST(Steps, GreedyExpansionConverges) {
  std::mt19937_64 rng(6);
  for (const CertReal& b : sample_bases(rng, 20)) {
    const BetaCtx ctx(b);
    const CertReal x0 = ctx.right_end() * CertReal::from_rational(random_rational(rng, 0, 1));
    CertReal x = x0;
    CertReal sum;
    CertReal power = CertReal::from_long(1);
    const int n = 30;
    for (int i = 1; i <= n; ++i) {
      power = power * ctx.inv_beta();
      const CertReal next = greedy_step(ctx, x);
      // digit = beta x - next
      const CertReal d = ctx.beta() * x - next;
      ASSERT_TRUE(eq(ctx, d, CertReal()) || eq(ctx, d, CertReal::from_long(1)));
      sum = sum + d * power;
      x = next;
    }
    const CertReal err = x0 - sum;
    const CertReal bound = power * ctx.right_end();
    EXPECT_TRUE(ctx.less_equal(err, bound));
    EXPECT_TRUE(ctx.less_equal(-bound, err));
  }
}

TEST(Omega, DeterministicReplay) {
  const OmegaSource r1 = OmegaSource::random(42);
  const OmegaSource r2 = OmegaSource::random(42);
  int ones = 0;
  for (std::size_t i = 0; i < 1000; ++i) {
    ASSERT_EQ(r1.digit(i), r2.digit(i));
    ASSERT_EQ(r1.digit(i), r1.digit(i));
    ones += r1.digit(i);
  }
  EXPECT_GT(ones, 400);
  EXPECT_LT(ones, 600);
  const OmegaSource f = OmegaSource::fixed_word({1, 0, 1}, 1);
  EXPECT_EQ(f.digit(0), 1);
  EXPECT_EQ(f.digit(1), 0);
  EXPECT_EQ(f.digit(100), 1);
  const OmegaSource p = OmegaSource::periodic({0, 1});
  EXPECT_EQ(p.digit(10), 0);
  EXPECT_EQ(p.digit(11), 1);
  const OmegaSource s = OmegaSource::stream([](std::size_t i) { return static_cast<int>(i % 3 == 0); });
  EXPECT_EQ(s.digit(3), 1);
  EXPECT_EQ(s.digit(4), 0);
}

TEST(ForcedOrbit, GoldenOneIsSwitchHi) {
  const BetaCtx ctx(golden());
  const ForcedOrbit o = forced_orbit(ctx, CertReal::from_long(1), 100);
  EXPECT_EQ(o.stop, OrbitStop::HitBoundaryHi);
  EXPECT_EQ(o.steps(), 0);
}

TEST(ForcedOrbit, ReachesInteriorFromZeroSide) {
  const BetaCtx ctx(dec("1.8"));
  const ForcedOrbit o = forced_orbit(ctx, q(1, 100), 100);
  EXPECT_EQ(o.stop, OrbitStop::HitInterior);
  // 0.01 * 1.8^n first exceeds 1/1.8 at n = 7
  EXPECT_EQ(o.steps(), 7);
  for (int d : o.word) EXPECT_EQ(d, 0);
}

TEST(ForcedOrbit, ZeroNeverReturns) {
  const BetaCtx ctx(dec("1.8"));
  const ForcedOrbit o = forced_orbit(ctx, CertReal(), 50);
  EXPECT_EQ(o.stop, OrbitStop::StepCapReached);
}
