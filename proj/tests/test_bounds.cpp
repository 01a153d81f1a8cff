#include "support.hpp"

#include <papc/bounds.hpp>
#include <papc/completion.hpp>
#include <papc/constructions.hpp>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <gtest/gtest.h>

#include <random>

namespace papc {
namespace {

using Real = boost::multiprecision::cpp_dec_float_50;

Real ref_g(int i, std::int64_t n) {
  const Real x = n;
  switch (i) {
    case 1: return x * x - 1;
    case 2: return x * x - 2 * sqrt(x + 3) + 6;
    case 3: return x * x - x / 6;
    default: return x * x - (sqrt(Real(5)) - 1) / 2 * x + 17 / sqrt(Real(5)) * sqrt(x) + 1;
  }
}

Real ref_g_min(std::int64_t n) {
  Real m = ref_g(1, n);
  for (int i = 2; i <= 4; ++i) m = std::min(m, ref_g(i, n));
  return m;
}

Real ref_f(std::int64_t n) { return (sqrt(Real(1 + 8 * n)) - 1) / 2; }

int expected_min(std::int64_t n) {
  if (n <= 6) return 1;
  if (n <= 15) return 3;
  if (n <= 56) return 2;
  if (n <= 288) return 3;
  return 4;
}

TEST(Report, Examples) {
  const auto r4 = bound_report(4);
  EXPECT_EQ(r4.which_min, 1);
  EXPECT_DOUBLE_EQ(r4.g[0], 15.0);
  EXPECT_DOUBLE_EQ(r4.g_min, 15.0);

  const auto r12 = bound_report(12);
  EXPECT_EQ(r12.which_min, 3);
  EXPECT_DOUBLE_EQ(r12.g[2], 142.0);

  const auto r6 = bound_report(6);
  EXPECT_DOUBLE_EQ(r6.f, 3.0);
  EXPECT_TRUE(r6.f_is_integer);
  EXPECT_EQ(r6.f_ceil, 3);
  EXPECT_THROW((void)bound_report(1), Error);
}

TEST(Report, FieldsAgreeWithReference) {
  for (std::int64_t n = 2; n < 400; ++n) {
    const auto r = bound_report(n);
    for (int i = 0; i < 4; ++i)
      EXPECT_NEAR(r.g[static_cast<std::size_t>(i)], ref_g(i + 1, n).convert_to<double>(), 1e-9 * double(n * n));
    const double f = r.f;
    EXPECT_NEAR(f * (f + 1), 2.0 * double(n), 1e-9 * 2.0 * double(n));
    EXPECT_GT(ref_f(n), sqrt(Real(2 * n)) - 1);
    const Real sq = Real(n) * n;
    EXPECT_NEAR(r.threshold_root_n, std::max(ref_g_min(n) - 1, sq - sqrt(Real(n))).convert_to<double>(), 1e-6);
    EXPECT_NEAR(r.threshold_f, std::max(ref_g_min(n) - 1, sq - ref_f(n)).convert_to<double>(), 1e-6);
  }
}

TEST(WhichMin, MatchesRanges) {
  for (std::int64_t n = 2; n <= 10000; ++n) ASSERT_EQ(which_min(n), expected_min(n)) << n;
}

TEST(WhichMin, MatchesReferenceMinimum) {
  for (std::int64_t n = 2; n <= 2000; ++n) {
    int best = 1;
    for (int i = 2; i <= 4; ++i)
      if (ref_g(i, n) < ref_g(best, n)) best = i;
    ASSERT_EQ(which_min(n), best) << n;
  }
}

TEST(Exceeds, Examples) {
  EXPECT_TRUE(exceeds(621, 25, Threshold::SquareMinusRootN));
  EXPECT_FALSE(exceeds(620, 25, Threshold::SquareMinusRootN));
  EXPECT_TRUE(exceeds(2491, 50, Threshold::SquareMinusF));
  EXPECT_FALSE(exceeds(2490, 50, Threshold::SquareMinusF));
  // g(3) = g1(3) = 8, so g - 1 = 7.
  EXPECT_TRUE(exceeds(8, 3, Threshold::GMinusOne));
  EXPECT_FALSE(exceeds(7, 3, Threshold::GMinusOne));
  EXPECT_THROW((void)exceeds(1, 1, Threshold::GMinusOne), Error);
}

TEST(Exceeds, AgreesWithReference) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 20000; ++trial) {
    const std::int64_t n = 2 + static_cast<std::int64_t>(rng() % 3000);
    const std::int64_t b = n * n - static_cast<std::int64_t>(rng() % (4 * static_cast<std::uint64_t>(n) + 10)) + 3;
    const Real rb = b;
    const Real sq = Real(n) * n;
    const Real g1 = ref_g_min(n) - 1;
    ASSERT_EQ(exceeds(b, n, Threshold::SquareMinusRootN), rb > sq - sqrt(Real(n))) << n << " " << b;
    ASSERT_EQ(exceeds(b, n, Threshold::SquareMinusF), rb > sq - ref_f(n)) << n << " " << b;
    ASSERT_EQ(exceeds(b, n, Threshold::GMinusOne), rb > g1) << n << " " << b;
    ASSERT_EQ(exceeds(b, n, Threshold::MaxGRootN), rb > std::max(g1, sq - sqrt(Real(n)))) << n << " " << b;
    ASSERT_EQ(exceeds(b, n, Threshold::MaxGF), rb > std::max(g1, sq - ref_f(n))) << n << " " << b;
  }
}

TEST(Exceeds, LeastExceedingIsTight) {
  for (std::int64_t n = 2; n < 300; ++n)
    for (auto t : {Threshold::GMinusOne, Threshold::SquareMinusRootN, Threshold::SquareMinusF, Threshold::MaxGRootN,
                   Threshold::MaxGF}) {
      const auto b = least_exceeding(n, t);
      EXPECT_TRUE(exceeds(b, n, t));
      EXPECT_FALSE(exceeds(b - 1, n, t));
    }
}

TEST(Remark, Examples) {
  EXPECT_TRUE(remark_check(19).root_n_dominates);
  EXPECT_TRUE(remark_check(49).root_n_dominates);
  EXPECT_TRUE(remark_check(49).f_dominates);
  EXPECT_FALSE(remark_check(10).root_n_dominates);
  EXPECT_FALSE(remark_check(18).root_n_dominates);
  EXPECT_FALSE(remark_check(48).f_dominates);
}

TEST(Remark, AgreesWithReference) {
  for (std::int64_t n = 2; n <= 3000; ++n) {
    const Real sq = Real(n) * n;
    const Real g1 = ref_g_min(n) - 1;
    const auto r = remark_check(n);
    ASSERT_EQ(r.root_n_dominates, g1 <= sq - sqrt(Real(n))) << n;
    ASSERT_EQ(r.f_dominates, g1 <= sq - ref_f(n)) << n;
  }
}

TEST(DegreeCertificate, Examples) {
  const auto ext = extend_to_partial_projective(delete_blocks(affine_plane(3), {0}));
  const auto c = degree_certificate(ext.structure, 3);
  EXPECT_TRUE(c.incidence_sum_holds);
  EXPECT_TRUE(c.pair_sum_holds);
  EXPECT_EQ(c.b, 12);

  const auto pg = degree_certificate(projective_plane(3), 3);
  EXPECT_TRUE(pg.incidence_sum_holds);
  EXPECT_TRUE(pg.pair_sum_holds);
  EXPECT_EQ(pg.b, 13);
  for (auto d : pg.degrees) EXPECT_EQ(d, 4);

  EXPECT_EQ(testing::error_code([] { (void)degree_certificate(IncidenceStructure(8, {{0, 1, 2, 3}, {4, 5, 6, 7}}), 3); }),
            ErrorCode::PreconditionViolated);
}

TEST(DegreeCertificate, SumsMatchBruteForce) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto packing = testing::random_packing(4, seed, 400);
    if (!classify_parallelism(packing).is_equivalence) continue;
    const auto ext = class_point_extension(packing);
    const auto c = degree_certificate(ext.structure, 4, ext.context);
    std::int64_t s1 = 0;
    std::int64_t s2 = 0;
    for (Point p = 0; p < ext.structure.num_points(); ++p) {
      const auto d = static_cast<std::int64_t>(testing::brute_valency(ext.structure, p));
      s1 += d;
      s2 += d * (d - 1);
    }
    EXPECT_EQ(c.sum_d, s1);
    EXPECT_EQ(c.sum_d_d_minus_1, s2);
    EXPECT_TRUE(c.incidence_sum_holds);
    EXPECT_TRUE(c.pair_sum_holds);
    if (c.excess_applicable) EXPECT_TRUE(c.excess_holds) << seed;
  }
}

TEST(DegreeCertificate, FanoInNine) {
  const auto ext = class_point_extension(testing::fano_in_nine());
  EXPECT_EQ(ext.context.k, 7);
  EXPECT_EQ(ext.context.e, 2);
  EXPECT_EQ(ext.context.f0, 2);
  const auto c = degree_certificate(ext.structure, 3, ext.context);
  EXPECT_TRUE(c.incidence_sum_holds && c.pair_sum_holds);
  EXPECT_TRUE(c.excess_applicable);
  EXPECT_EQ(c.excess_lhs, 6);
  EXPECT_EQ(c.excess_rhs, 6);
  EXPECT_TRUE(c.excess_holds);

  const auto gdd = extremal_gdd_check(testing::fano_in_nine());
  EXPECT_TRUE(gdd.applicable);
  EXPECT_EQ(gdd.group_size, 1);
  EXPECT_EQ(gdd.group_count, 7);
  ASSERT_TRUE(gdd.groups.has_value());
  EXPECT_EQ(gdd.groups->size(), 7u);
}

TEST(SqrtComparisons, Exact) {
  EXPECT_TRUE(at_least_sqrt(2, 4));
  EXPECT_FALSE(at_least_sqrt(1, 4));
  EXPECT_TRUE(at_most_sqrt(2, 4));
  EXPECT_FALSE(at_most_sqrt(3, 8));
  for (std::int64_t n = 1; n < 500; ++n) {
    std::int64_t r = 0;
    while ((r + 1) * (r + 1) <= n) ++r;
    const bool square = r * r == n;
    for (std::int64_t s = 0; s < 25; ++s) {
      EXPECT_EQ(at_least_sqrt(s, n), s > r || (s == r && square)) << s << " " << n;
      EXPECT_EQ(at_most_sqrt(s, n), s <= r) << s << " " << n;
    }
  }
}

}  // namespace
}  // namespace papc
