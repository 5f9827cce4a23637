#include <gtest/gtest.h>

#include "betaret/beta_spec.hpp"
#include "betaret/error.hpp"
#include "support.hpp"

using namespace betaret;

TEST(BetaSpec, RoundTrip) {
  for (const char* s : {"1.8", "1.754", "9/5", "2.5e-1", "7/3", "golden", "tribonacci", "multinacci(4)", "gamma(3)",
                        "alpha(2)", "eta(5)", "poly(x^3-x^2-x-1;1;2)", "poly(2x^3-4x^2+1;1.5;2)",
                        " Golden ", "1.80"}) {
    const BetaSpec a = BetaSpec::parse(s);
    const BetaSpec b = BetaSpec::parse(a.format());
    EXPECT_TRUE(a == b) << s << " -> " << a.format();
    EXPECT_EQ(compare(a.value(), b.value()), Ordering::Equal) << s;
  }
}

TEST(BetaSpec, DecimalIsExact) {
  const BetaSpec a = BetaSpec::parse("1.754");
  EXPECT_EQ(a.kind(), BetaSpec::Kind::Rational);
  EXPECT_EQ(*a.value().as_rational(), mpq_class(877, 500));
  EXPECT_EQ(a.format(), "1.754");
  EXPECT_EQ(BetaSpec::parse("7/3").format(), "7/3");
}

TEST(BetaSpec, NamedValues) {
  EXPECT_EQ(compare(BetaSpec::parse("golden").value(), testing_support::golden()), Ordering::Equal);
  EXPECT_EQ(compare(BetaSpec::parse("tribonacci").value(), testing_support::multinacci(2)), Ordering::Equal);
  EXPECT_EQ(compare(BetaSpec::parse("poly(x^3-x^2-x-1;1;2)").value(), testing_support::multinacci(2)),
            Ordering::Equal);
  EXPECT_EQ(compare(BetaSpec::from_polynomial("x^2-x-1", "[1,2]").value(), testing_support::golden()),
            Ordering::Equal);
}

TEST(BetaSpec, Errors) {
  for (const char* s : {"", "abc", "multinacci(x)", "multinacci(0)", "poly(x^2-2;2;3)", "poly(x^2-2)", "1.8.1"}) {
    EXPECT_THROW(BetaSpec::parse(s), Error) << s;
  }
  EXPECT_THROW(BetaSpec::from_polynomial("x^2-2", "1"), Error);
}

TEST(FormatRational, DecimalOrFraction) {
  EXPECT_EQ(format_rational(mpq_class(9, 5)), "1.8");
  EXPECT_EQ(format_rational(mpq_class(-1, 8)), "-0.125");
  EXPECT_EQ(format_rational(mpq_class(3)), "3");
  EXPECT_EQ(format_rational(mpq_class(1, 3)), "1/3");
  EXPECT_EQ(format_rational(mpq_class(1, 20)), "0.05");
}
