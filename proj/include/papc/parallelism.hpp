#pragma once

// Parallelism on the lines of a partial affine plane: two lines are parallel
// when they are equal or disjoint. The relation is an equivalence exactly when
// no point off a line lies on two lines missing it.

#include <papc/incidence.hpp>

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

namespace papc {

/// Two lines through `point`, both missing `line`.
struct ParallelWitness {
  std::size_t line = 0;
  Point point = 0;
  std::size_t first = 0;
  std::size_t second = 0;
};

struct ParallelClassification {
  bool is_equivalence = false;
  std::vector<std::vector<std::size_t>> classes;  // sorted by smallest block index
  std::optional<ParallelWitness> witness;

  [[nodiscard]] std::size_t class_count() const noexcept { return classes.size(); }

  /// Index into `classes` for each block.
  [[nodiscard]] std::vector<std::size_t> class_of_block(std::size_t num_blocks) const {
    std::vector<std::size_t> out(num_blocks, 0);
    for (std::size_t c = 0; c < classes.size(); ++c)
      for (auto b : classes[c]) out[b] = c;
    return out;
  }
};

inline bool are_parallel(const IncidenceStructure& s, std::size_t i, std::size_t j) {
  s.check_block(i);
  s.check_block(j);
  return i == j || !s.block_set(i).intersects(s.block_set(j));
}

/// Decides equivalence with the one-parallel-through-a-point criterion and, when
/// it holds, groups the lines into classes.
inline ParallelClassification classify_parallelism(const IncidenceStructure& s) {
  if (s.num_blocks() > 0) {
    auto k = s.block_size();
    if (!k || !pairwise_meet_at_most_one(s))
      throw Error(ErrorCode::NotAPap, "lines must share one size and meet in at most one point");
  }
  const auto b = s.num_blocks();
  ParallelClassification out;

  std::vector<std::vector<std::size_t>> disjoint(b);
  for (std::size_t i = 0; i < b; ++i)
    for (std::size_t j = i + 1; j < b; ++j)
      if (!s.block_set(i).intersects(s.block_set(j))) {
        disjoint[i].push_back(j);
        disjoint[j].push_back(i);
      }

  std::vector<std::size_t> first_through(s.num_points(), b);
  for (std::size_t l = 0; l < b; ++l) {
    std::fill(first_through.begin(), first_through.end(), b);
    for (auto m : disjoint[l]) {
      for (auto p : s.block(m)) {
        if (first_through[p] != b) {
          out.is_equivalence = false;
          out.witness = ParallelWitness{l, p, first_through[p], m};
          return out;
        }
        first_through[p] = m;
      }
    }
  }

  out.is_equivalence = true;
  std::vector<std::size_t> parent(b);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < b; ++i)
    for (auto j : disjoint[i]) {
      auto ri = find(i);
      auto rj = find(j);
      if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
    }
  std::vector<std::size_t> slot(b, b);
  for (std::size_t i = 0; i < b; ++i) {
    auto r = find(i);
    if (slot[r] == b) {
      slot[r] = out.classes.size();
      out.classes.emplace_back();
    }
    out.classes[slot[r]].push_back(i);
  }
  return out;
}

/// Outcome of checking the two structural bounds for a PAP of order n with
/// n^2 - a lines (1 <= a <= n-1) and no point on n+1 lines.
struct StructureBoundsReport {
  std::size_t n = 0;
  std::size_t a = 0;
  std::size_t smallest_class = 0;
  std::size_t low_valency_points = 0;  // points on fewer than n lines
  bool class_bound_holds = false;      // every class has >= n - a lines
  bool point_bound_holds = false;      // at most n*a points of valency < n
  std::optional<std::size_t> violating_class;

  [[nodiscard]] bool holds() const noexcept { return class_bound_holds && point_bound_holds; }
};

inline StructureBoundsReport structure_bounds_check(const IncidenceStructure& s) {
  const auto n = require_pap(s);
  const auto b = s.num_blocks();
  if (b >= n * n || n * n - b > n - 1)
    throw Error(ErrorCode::PreconditionViolated,
                "need n^2 - (n-1) <= b <= n^2 - 1, got b = " + std::to_string(b) + " for n = " + std::to_string(n));
  for (Point p = 0; p < s.num_points(); ++p)
    if (valency(s, p) == n + 1)
      throw Error(ErrorCode::PreconditionViolated, "point " + std::to_string(p) + " lies on n+1 lines");
  auto pc = classify_parallelism(s);
  if (!pc.is_equivalence) throw Error(ErrorCode::PreconditionViolated, "parallelism is not an equivalence relation");

  StructureBoundsReport r;
  r.n = n;
  r.a = n * n - b;
  r.smallest_class = n;
  for (std::size_t c = 0; c < pc.classes.size(); ++c) {
    if (pc.classes[c].size() < r.smallest_class) r.smallest_class = pc.classes[c].size();
    if (pc.classes[c].size() + r.a < n && !r.violating_class) r.violating_class = c;
  }
  r.class_bound_holds = !r.violating_class.has_value();
  for (Point p = 0; p < s.num_points(); ++p)
    if (valency(s, p) < n) ++r.low_valency_points;
  r.point_bound_holds = r.low_valency_points <= n * r.a;
  return r;
}

}  // namespace papc
