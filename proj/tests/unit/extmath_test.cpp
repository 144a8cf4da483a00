#include <gtest/gtest.h>

#include <random>

#include "fredholm/extmath.hpp"

using namespace fredholm;

TEST(ExtNat, Add) {
  EXPECT_EQ(ExtNat(2) + ExtNat(3), ExtNat(5));
  EXPECT_EQ(INF + ExtNat(3), INF);
  EXPECT_EQ(ExtNat(0) + ExtNat(0), ExtNat(0));
  EXPECT_EQ(INF + INF, INF);
  static_assert(ext_add(ExtNat(1), ExtNat(1)) == ExtNat(2));
}

TEST(ExtNat, Order) {
  EXPECT_TRUE(ext_leq(5, INF));
  EXPECT_FALSE(ext_leq(INF, 5));
  EXPECT_TRUE(ext_leq(INF, INF));
  EXPECT_FALSE(ext_lt(INF, INF));
  EXPECT_TRUE(ext_lt(3, INF));
  EXPECT_TRUE(ext_lt(3, 4));
  EXPECT_FALSE(ext_lt(4, 4));
}

TEST(ExtNat, ValueOfInfinityThrows) {
  EXPECT_THROW((void)INF.value(), Error);
}

TEST(ExtInt, Sub) {
  EXPECT_EQ(ext_sub(3, 1), ExtInt(2));
  EXPECT_EQ(ext_sub(2, INF), ExtInt::neg_inf());
  EXPECT_EQ(ext_sub(INF, 2), ExtInt::pos_inf());
  try {
    (void)ext_sub(INF, INF);
    FAIL() << "expected BothInfinite";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BothInfinite);
  }
}

TEST(ExtInt, OrderAndPrinting) {
  EXPECT_LT(ExtInt::neg_inf(), ExtInt(-1000));
  EXPECT_LT(ExtInt(1000), ExtInt::pos_inf());
  EXPECT_EQ(-ExtInt::pos_inf(), ExtInt::neg_inf());
  EXPECT_EQ(to_string(ExtInt::neg_inf()), "-inf");
  EXPECT_EQ(to_string(ExtInt(-3)), "-3");
  EXPECT_EQ(to_string(INF), "inf");
}

namespace {

ExtNat draw(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(0, 12);
  const int v = d(rng);
  return v == 12 ? INF : ExtNat(static_cast<std::uint64_t>(v));
}

}  // namespace

TEST(ExtNat, AlgebraicProperties) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20000; ++i) {
    const ExtNat a = draw(rng), b = draw(rng), c = draw(rng);
    ASSERT_EQ(a + b, b + a);
    ASSERT_EQ((a + b) + c, a + (b + c));
    if (ext_leq(a, b)) ASSERT_TRUE(ext_leq(a + c, b + c));
    if (a.is_finite() || b.is_finite()) ASSERT_EQ(ext_sub(a, b) >= ExtInt(0), ext_leq(b, a));
  }
}
