#include "support.hpp"

#include <papc/constructions.hpp>
#include <papc/parallelism.hpp>

#include <gtest/gtest.h>

#include <map>

namespace papc {
namespace {

std::map<std::size_t, std::size_t> valency_histogram(const IncidenceStructure& s) {
  std::map<std::size_t, std::size_t> h;
  for (Point p = 0; p < s.num_points(); ++p) ++h[testing::brute_valency(s, p)];
  return h;
}

TEST(Affine, Counts) {
  for (auto [q, lines] : {std::pair{2, 6u}, {3, 12u}, {4, 20u}, {5, 30u}, {7, 56u}}) {
    const auto ag = affine_plane(q);
    EXPECT_EQ(ag.num_points(), static_cast<std::size_t>(q * q));
    EXPECT_EQ(ag.num_blocks(), lines);
    EXPECT_TRUE(is_design(ag, {2, q * q, q, 1}));
  }
  const auto ag4 = affine_plane(4);
  for (Point p = 0; p < 16; ++p) EXPECT_EQ(valency(ag4, p), 5u);
  EXPECT_THROW((void)affine_plane(6), Error);
}

TEST(Affine, MatchesAffineSpaceOfDimensionTwo) {
  for (int q : {2, 3, 4, 5, 7, 8, 9}) EXPECT_EQ(affine_plane(q), affine_space_line_design(q, 2)) << q;
}

TEST(AffineSpace, Counts) {
  const auto a23 = affine_space_line_design(2, 3);
  EXPECT_EQ(a23.num_points(), 8u);
  EXPECT_EQ(a23.num_blocks(), 28u);
  EXPECT_TRUE(is_design(a23, {2, 8, 2, 1}));

  const auto a33 = affine_space_line_design(3, 3);
  EXPECT_EQ(a33.num_points(), 27u);
  EXPECT_EQ(a33.num_blocks(), 117u);
  for (Point p = 0; p < 27; ++p) EXPECT_EQ(valency(a33, p), 13u);
  EXPECT_TRUE(testing::brute_is_design(a33, 2, 27, 3, 1));

  EXPECT_TRUE(is_design(affine_space_line_design(4, 3), {2, 64, 4, 1}));
  EXPECT_THROW((void)affine_space_line_design(2, 1), Error);
  EXPECT_THROW((void)affine_space_line_design(2, 16), Error);
}

TEST(Projective, Counts) {
  for (int q : {2, 3, 4, 5}) {
    const auto pg = projective_plane(q);
    const auto v = static_cast<std::size_t>(q * q + q + 1);
    EXPECT_EQ(pg.num_points(), v);
    EXPECT_EQ(pg.num_blocks(), v);
    for (const auto& b : pg.blocks()) EXPECT_EQ(b.size(), static_cast<std::size_t>(q + 1));
    for (std::size_t i = 0; i < pg.num_blocks(); ++i)
      for (std::size_t j = i + 1; j < pg.num_blocks(); ++j)
        ASSERT_EQ(testing::common_points(pg.block(i), pg.block(j)), 1u);
  }
}

TEST(Projective, RemovingALineGivesAffineCounts) {
  for (int q : {2, 3, 4}) {
    const auto pg = projective_plane(q);
    const auto ag = affine_plane(q);
    for (std::size_t li = 0; li < pg.num_blocks(); ++li) {
      const auto& line = pg.block(li);
      std::vector<Point> keep;
      for (Point p = 0; p < pg.num_points(); ++p)
        if (!testing::contains(line, p)) keep.push_back(p);
      std::vector<Block> blocks;
      for (std::size_t i = 0; i < pg.num_blocks(); ++i) {
        if (i == li) continue;
        Block b;
        for (auto p : pg.block(i)) {
          auto it = std::find(keep.begin(), keep.end(), p);
          if (it != keep.end()) b.push_back(static_cast<Point>(it - keep.begin()));
        }
        blocks.push_back(b);
      }
      const IncidenceStructure rest(keep.size(), blocks);
      EXPECT_EQ(rest.num_points(), ag.num_points());
      EXPECT_EQ(rest.num_blocks(), ag.num_blocks());
      EXPECT_EQ(valency_histogram(rest), valency_histogram(ag));
    }
  }
}

TEST(Miquelian, Counts) {
  const auto m2 = miquelian_inversive_plane(2);
  EXPECT_EQ(m2.num_points(), 5u);
  EXPECT_EQ(m2.num_blocks(), 10u);
  EXPECT_EQ(m2.blocks(), testing::subsets(5, 3));

  const auto m3 = miquelian_inversive_plane(3);
  EXPECT_EQ(m3.num_points(), 10u);
  EXPECT_EQ(m3.num_blocks(), 30u);
  EXPECT_TRUE(testing::brute_is_design(m3, 3, 10, 4, 1));

  const auto m4 = miquelian_inversive_plane(4);
  EXPECT_EQ(m4.num_points(), 17u);
  EXPECT_EQ(m4.num_blocks(), 68u);
  EXPECT_TRUE(testing::brute_is_design(m4, 3, 17, 5, 1));

  for (int q : {5, 7}) {
    const auto m = miquelian_inversive_plane(q);
    EXPECT_EQ(m.num_blocks(), static_cast<std::size_t>(q * (q * q + 1)));
    EXPECT_TRUE(is_design(m, {3, q * q + 1, q + 1, 1}));
  }
  EXPECT_THROW((void)miquelian_inversive_plane(8), Error);
  EXPECT_THROW((void)miquelian_inversive_plane(6), Error);
}

TEST(Baer, OrderFour) {
  const auto s = baer_example(4);
  EXPECT_EQ(s.num_points(), 16u);
  EXPECT_EQ(s.num_blocks(), 14u);
  std::size_t isolated = 0;
  for (Point p = 0; p < 16; ++p) {
    const auto v = testing::brute_valency(s, p);
    if (v == 0)
      ++isolated;
    else
      EXPECT_EQ(v, 4u);
  }
  EXPECT_EQ(isolated, 2u);
  EXPECT_EQ(14u * 4u, (16u - isolated) * 4u);  // incidences counted both ways
  const auto pc = classify_parallelism(s);
  EXPECT_TRUE(pc.is_equivalence);
  EXPECT_EQ(pc.class_count(), 7u);
  for (const auto& c : pc.classes) EXPECT_EQ(c.size(), 2u);
}

TEST(Baer, OrderNine) {
  const auto s = baer_example(9);
  EXPECT_EQ(s.num_points(), 81u);
  EXPECT_EQ(s.num_blocks(), 78u);
  std::size_t isolated = 0;
  for (Point p = 0; p < 81; ++p) isolated += valency(s, p) == 0 ? 1 : 0;
  EXPECT_EQ(isolated, 3u);
  const auto pc = classify_parallelism(s);
  EXPECT_TRUE(pc.is_equivalence);
  EXPECT_EQ(pc.class_count(), 13u);
  EXPECT_GT(pc.class_count(), 10u);
}

TEST(Baer, RejectsNonSquares) {
  EXPECT_EQ(testing::error_code([] { (void)baer_example(5); }), ErrorCode::NotASquare);
  EXPECT_EQ(testing::error_code([] { (void)baer_example(36); }), ErrorCode::UnsupportedOrder);
}

TEST(Transversal, Counts) {
  for (auto [m, blocks] : {std::pair{2, 4u}, {3, 9u}, {4, 16u}}) {
    const auto td = transversal_design(3, m);
    EXPECT_EQ(td.num_points(), static_cast<std::size_t>(3 * m));
    EXPECT_EQ(td.num_blocks(), blocks);
    EXPECT_TRUE(is_group_divisible(td, {3, m, 3}).has_value());
  }
  EXPECT_THROW((void)transversal_design(4, 3), Error);
  EXPECT_THROW((void)transversal_design(1), Error);
}

TEST(Deletion, Explicit) {
  EXPECT_EQ(delete_blocks(affine_plane(3), {0}).num_blocks(), 11u);
  EXPECT_EQ(testing::error_code([] { (void)delete_blocks(affine_plane(3), {12}); }), ErrorCode::IndexOutOfRange);
}

TEST(Deletion, RandomIsSeededAndKeepsEquivalence) {
  const auto ag = affine_plane(4);
  const auto s = random_deletion(ag, 3, 1, true);
  EXPECT_EQ(s.num_blocks(), 17u);
  EXPECT_TRUE(classify_parallelism(s).is_equivalence);
  EXPECT_TRUE(testing::brute_parallel_is_equivalence(s));
  EXPECT_EQ(s, random_deletion(ag, 3, 1, true));
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto t = random_deletion(ag, 6, seed, true);
    EXPECT_TRUE(testing::brute_parallel_is_equivalence(t)) << seed;
  }
  EXPECT_EQ(testing::error_code([&] { (void)random_deletion(ag, 21, 0, false); }), ErrorCode::PreconditionViolated);
}

}  // namespace
}  // namespace papc
