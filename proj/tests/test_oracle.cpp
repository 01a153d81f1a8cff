#include "support.hpp"

#include <papc/constructions.hpp>
#include <papc/oracle.hpp>

#include <gtest/gtest.h>

#include <random>

namespace papc {
namespace {

OracleOptions count_all(unsigned threads = 1) {
  OracleOptions o;
  o.mode = OracleMode::CountAll;
  o.threads = threads;
  return o;
}

void expect_valid(const OracleOutcome& out, const IncidenceStructure& s, const DesignParams& params) {
  ASSERT_TRUE(out.first_completion.has_value());
  const auto& r = *out.first_completion;
  EXPECT_TRUE(is_design(r.completed, params));
  EXPECT_EQ(r.method, Method::OracleSearch);
  for (const auto& b : s.blocks()) EXPECT_TRUE(r.completed.find_block(b).has_value());
  for (const auto& b : r.added_blocks) EXPECT_FALSE(s.find_block(b).has_value());
  EXPECT_EQ(r.completed.num_blocks(), s.num_blocks() + r.added_blocks.size());
}

TEST(Oracle, KnownCounts) {
  const auto fano = oracle_complete(IncidenceStructure(7, {}), {2, 7, 3, 1}, count_all());
  EXPECT_EQ(fano.completions_found, 30u);
  EXPECT_TRUE(fano.exhausted);

  const auto ag = oracle_complete(IncidenceStructure(9, {}), {2, 9, 3, 1}, count_all());
  EXPECT_EQ(ag.completions_found, 840u);

  const auto two = oracle_complete(IncidenceStructure(6, {}), {2, 6, 3, 2}, count_all());
  EXPECT_EQ(two.completions_found, 12u);
}

TEST(Oracle, FanoMinusOneLineIsRigid) {
  const auto pg = projective_plane(2);
  for (std::size_t i = 0; i < pg.num_blocks(); ++i) {
    const auto s = delete_blocks(pg, {i});
    const auto out = complete_partial_projective_search(s, 2, count_all());
    EXPECT_EQ(out.completions_found, 1u);
    EXPECT_TRUE(out.exhausted);
    const auto first = complete_partial_projective_search(s, 2);
    expect_valid(first, s, {2, 7, 3, 1});
    EXPECT_EQ(first.first_completion->added_blocks, std::vector<Block>{pg.block(i)});
  }
}

TEST(Oracle, ProjectiveThreeAboveBound) {
  const auto pg = projective_plane(3);
  std::mt19937_64 rng(3);
  for (std::size_t b = 9; b <= 12; ++b) {
    std::vector<std::size_t> idx(13);
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    const auto s = delete_blocks(pg, std::vector<std::size_t>(idx.begin(), idx.begin() + static_cast<long>(13 - b)));
    const auto out = complete_partial_projective_search(s, 3, count_all());
    EXPECT_TRUE(out.exhausted);
    EXPECT_GE(out.completions_found, 1u) << b;
    expect_valid(out, s, {2, 13, 4, 1});
  }
}

TEST(Oracle, ProjectiveFourBoundaryRuns) {
  const auto pg = projective_plane(4);
  const auto s = delete_blocks(pg, {0, 3, 7, 11, 15, 19});
  const auto out = complete_partial_projective_search(s, 4);
  EXPECT_TRUE(out.exhausted || out.completions_found > 0);
  if (out.first_completion) expect_valid(out, s, {2, 21, 5, 1});
}

TEST(Oracle, Baer) {
  const auto out = oracle_complete(baer_example(4), {2, 16, 4, 1});
  EXPECT_EQ(out.completions_found, 0u);
  EXPECT_TRUE(out.exhausted);
  EXPECT_TRUE(out.certifies_none());
}

TEST(Oracle, AffineMinusThree) {
  const auto ag = affine_plane(3);
  const auto classes = testing::affine_classes(ag);
  for (const auto& c : classes) {
    const auto s = delete_blocks(ag, {c[0], c[1], c[2]});
    const auto out = oracle_complete(s, {2, 9, 3, 1}, count_all());
    EXPECT_EQ(out.completions_found, 1u);
  }
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto s = random_deletion(ag, 3, seed, false);
    const auto out = oracle_complete(s, {2, 9, 3, 1});
    EXPECT_EQ(out.completions_found, 1u);
    expect_valid(out, s, {2, 9, 3, 1});
  }
}

TEST(Oracle, MiquelianMinusOneCircle) {
  const auto m = miquelian_inversive_plane(3);
  const auto s = delete_blocks(m, {4});
  const auto out = oracle_complete(s, {3, 10, 4, 1}, count_all());
  EXPECT_EQ(out.completions_found, 1u);
  EXPECT_TRUE(out.exhausted);
  EXPECT_EQ(out.first_completion->completed, m);
}

TEST(Oracle, CountsMatchBruteForce) {
  std::vector<std::pair<IncidenceStructure, DesignParams>> cases;
  const auto ag = affine_plane(3);
  for (std::uint64_t seed = 0; seed < 6; ++seed) cases.push_back({random_deletion(ag, 4 + seed % 3, seed, false), {2, 9, 3, 1}});
  const auto pg = projective_plane(2);
  for (std::uint64_t seed = 0; seed < 4; ++seed) cases.push_back({random_deletion(pg, 3 + seed % 3, seed, false), {2, 7, 3, 1}});
  const auto m2 = miquelian_inversive_plane(2);
  for (std::uint64_t seed = 0; seed < 4; ++seed) cases.push_back({random_deletion(m2, 5 + seed, seed, false), {3, 5, 3, 1}});
  cases.push_back({IncidenceStructure(6, {{0, 1, 2}, {0, 1, 3}}), {2, 6, 3, 2}});
  cases.push_back({IncidenceStructure(7, {{0, 1, 2}}), {2, 7, 3, 1}});
  cases.push_back({IncidenceStructure(8, {{0, 1, 2, 3}}), {3, 8, 4, 1}});
  for (const auto& [s, p] : cases) {
    const auto got = oracle_complete(s, p, count_all());
    const auto want = testing::brute_count_completions(s, p.t, p.v, p.k, p.lambda);
    EXPECT_EQ(got.completions_found, want) << s.num_blocks() << " blocks";
    EXPECT_TRUE(got.exhausted);
  }
}

TEST(Oracle, ParallelMatchesSequential) {
  std::vector<std::pair<IncidenceStructure, DesignParams>> cases{
      {IncidenceStructure(7, {}), {2, 7, 3, 1}},
      {IncidenceStructure(9, {}), {2, 9, 3, 1}},
      {IncidenceStructure(6, {}), {2, 6, 3, 2}},
      {delete_blocks(affine_plane(4), {0, 5, 10, 15}), {2, 16, 4, 1}},
      {baer_example(4), {2, 16, 4, 1}},
  };
  for (const auto& [s, p] : cases) {
    const auto seq = oracle_complete(s, p, count_all(1));
    const auto par = oracle_complete(s, p, count_all(4));
    EXPECT_EQ(seq.completions_found, par.completions_found);
    EXPECT_EQ(seq.exhausted, par.exhausted);
    OracleOptions first;
    first.threads = 4;
    const auto a = oracle_complete(s, p);
    const auto b = oracle_complete(s, p, first);
    EXPECT_EQ(a.completions_found, b.completions_found);
    if (a.first_completion) EXPECT_EQ(a.first_completion->added_blocks, b.first_completion->added_blocks);
  }
}

TEST(Oracle, LimitAndBudget) {
  auto o = count_all();
  o.limit = 5;
  const auto limited = oracle_complete(IncidenceStructure(9, {}), {2, 9, 3, 1}, o);
  EXPECT_EQ(limited.completions_found, 5u);
  EXPECT_FALSE(limited.exhausted);

  OracleOptions tiny;
  tiny.node_budget = 3;
  const auto stopped = oracle_complete(baer_example(4), {2, 16, 4, 1}, tiny);
  EXPECT_TRUE(stopped.budget_exhausted);
  EXPECT_FALSE(stopped.exhausted);
  EXPECT_FALSE(stopped.certifies_none());
}

TEST(Oracle, RejectsNonPartialDesign) {
  EXPECT_EQ(testing::error_code([] { (void)oracle_complete(IncidenceStructure(7, {{0, 1, 2}, {0, 1, 3}}), {2, 7, 3, 1}); }),
            ErrorCode::InvalidInput);
  EXPECT_EQ(testing::error_code([] { (void)complete_partial_projective_search(affine_plane(3), 3); }),
            ErrorCode::InvalidInput);
}

}  // namespace
}  // namespace papc
