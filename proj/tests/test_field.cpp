#include <papc/field.hpp>

#include <gtest/gtest.h>

namespace papc {
namespace {

// Independent axiom sweep over every triple.
bool is_field(const FieldTable& f) {
  for (int a = 0; a < f.q; ++a) {
    if (f.add(a, f.zero) != a || f.mul(a, f.one) != a) return false;
    bool has_neg = false;
    bool has_inv = a == f.zero;
    for (int b = 0; b < f.q; ++b) {
      has_neg = has_neg || f.add(a, b) == f.zero;
      has_inv = has_inv || f.mul(a, b) == f.one;
      if (f.add(a, b) != f.add(b, a) || f.mul(a, b) != f.mul(b, a)) return false;
      for (int c = 0; c < f.q; ++c) {
        if (f.add(f.add(a, b), c) != f.add(a, f.add(b, c))) return false;
        if (f.mul(f.mul(a, b), c) != f.mul(a, f.mul(b, c))) return false;
        if (f.mul(a, f.add(b, c)) != f.add(f.mul(a, b), f.mul(a, c))) return false;
      }
    }
    if (!has_neg || !has_inv) return false;
  }
  return true;
}

TEST(Field, TwoIsXorAnd) {
  const auto f = make_field(2);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      EXPECT_EQ(f.add(a, b), a ^ b);
      EXPECT_EQ(f.mul(a, b), a & b);
    }
}

TEST(Field, FourUsesXSquaredPlusXPlusOne) {
  const auto f = make_field(4);
  EXPECT_EQ(f.p, 2);
  EXPECT_EQ(f.m, 2);
  // Element 2 encodes X; X^2 = X + 1 encodes 3.
  EXPECT_EQ(f.mul(2, 2), 3);
  EXPECT_EQ(f.mul(2, 3), 1);
  EXPECT_TRUE(is_field(f));
}

TEST(Field, SmallOrdersSatisfyAxioms) {
  for (int q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27}) {
    const auto f = make_field(q);
    EXPECT_EQ(f.q, q);
    EXPECT_TRUE(is_field(f)) << q;
  }
}

TEST(Field, LargeOrdersBuild) {
  for (int q : {32, 49, 64, 81, 121, 128}) {
    const auto f = make_field(q);
    for (int a = 1; a < q; ++a) ASSERT_EQ(f.mul(a, f.inv(a)), f.one) << q;
    // The multiplicative group has order q - 1.
    for (int a = 1; a < q; a += 7) ASSERT_EQ(f.pow(a, q - 1), f.one) << q;
  }
}

TEST(Field, UnsupportedOrders) {
  for (int q : {0, 1, 6, 10, 12, 243}) EXPECT_THROW((void)make_field(q), Error) << q;
  try {
    (void)make_field(6);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsupportedOrder);
  }
}

TEST(Field, Subfields) {
  EXPECT_EQ(make_field(4).subfield(2).size(), 2u);
  EXPECT_EQ(make_field(9).subfield(3).size(), 3u);
  EXPECT_EQ(make_field(16).subfield(4).size(), 4u);
  EXPECT_THROW((void)make_field(4).inv(0), Error);
}

}  // namespace
}  // namespace papc
