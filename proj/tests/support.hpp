#pragma once

// Reference implementations used only by the tests. They are written from the
// definitions with plain vectors and nested loops, sharing no code with the
// library beyond the IncidenceStructure container.

#include <papc/constructions.hpp>
#include <papc/incidence.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <numeric>
#include <random>
#include <vector>

namespace papc::testing {

/// Code of the papc::Error thrown by fn, or nothing when it returns normally.
template <class F>
std::optional<ErrorCode> error_code(F&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline bool contains(const Block& b, Point p) { return std::find(b.begin(), b.end(), p) != b.end(); }

inline bool contains_all(const Block& b, const std::vector<Point>& pts) {
  return std::all_of(pts.begin(), pts.end(), [&](Point p) { return contains(b, p); });
}

inline std::size_t common_points(const Block& a, const Block& b) {
  std::size_t c = 0;
  for (auto p : a) c += contains(b, p) ? 1 : 0;
  return c;
}

inline std::size_t brute_valency(const IncidenceStructure& s, Point p) {
  std::size_t c = 0;
  for (const auto& b : s.blocks()) c += contains(b, p) ? 1 : 0;
  return c;
}

inline std::size_t brute_unjoined(const IncidenceStructure& s, Point p) {
  std::size_t c = 0;
  for (Point q = 0; q < s.num_points(); ++q) {
    if (q == p) continue;
    bool joined = false;
    for (const auto& b : s.blocks()) joined = joined || (contains(b, p) && contains(b, q));
    if (!joined) ++c;
  }
  return c;
}

/// All t-subsets of {0..v-1} in lexicographic order.
inline std::vector<std::vector<Point>> subsets(std::size_t v, std::size_t t) {
  std::vector<std::vector<Point>> out;
  std::vector<Point> cur;
  std::function<void(Point)> rec = [&](Point from) {
    if (cur.size() == t) {
      out.push_back(cur);
      return;
    }
    for (Point p = from; p < v; ++p) {
      cur.push_back(p);
      rec(p + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

/// Coverage of every t-subset: returns (min, max) over all t-subsets.
inline std::pair<int, int> coverage_range(const IncidenceStructure& s, std::size_t t) {
  int lo = 1 << 30;
  int hi = 0;
  for (const auto& sub : subsets(s.num_points(), t)) {
    int c = 0;
    for (const auto& b : s.blocks()) c += contains_all(b, sub) ? 1 : 0;
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  return {lo, hi};
}

inline bool brute_is_design(const IncidenceStructure& s, int t, int v, int k, int lambda) {
  if (s.num_points() != static_cast<std::size_t>(v)) return false;
  for (const auto& b : s.blocks())
    if (b.size() != static_cast<std::size_t>(k)) return false;
  const auto [lo, hi] = coverage_range(s, static_cast<std::size_t>(t));
  return lo == lambda && hi == lambda;
}

inline bool brute_is_partial_design(const IncidenceStructure& s, int t, int v, int k, int lambda) {
  if (s.num_points() != static_cast<std::size_t>(v)) return false;
  for (const auto& b : s.blocks())
    if (b.size() != static_cast<std::size_t>(k)) return false;
  return coverage_range(s, static_cast<std::size_t>(t)).second <= lambda;
}

/// Parallelism as a relation on block indices, tested for transitivity directly.
inline bool brute_parallel_is_equivalence(const IncidenceStructure& s) {
  const auto& bs = s.blocks();
  auto par = [&](std::size_t i, std::size_t j) { return i == j || common_points(bs[i], bs[j]) == 0; };
  for (std::size_t i = 0; i < bs.size(); ++i)
    for (std::size_t j = 0; j < bs.size(); ++j)
      for (std::size_t k = 0; k < bs.size(); ++k)
        if (par(i, j) && par(j, k) && !par(i, k)) return false;
  return true;
}

/// Counts the sets of new blocks completing s to a t-(v,k,lambda) design with
/// no repeated block, by include/exclude over every k-subset in lexicographic order.
inline std::uint64_t brute_count_completions(const IncidenceStructure& s, int t, int v, int k, int lambda,
                                             std::uint64_t cap = ~std::uint64_t{0}) {
  const auto tsubs = subsets(static_cast<std::size_t>(v), static_cast<std::size_t>(t));
  std::map<std::vector<Point>, std::size_t> tindex;
  for (std::size_t i = 0; i < tsubs.size(); ++i) tindex[tsubs[i]] = i;
  std::vector<int> count(tsubs.size(), 0);
  auto tsubsets_of = [&](const Block& b) {
    std::vector<std::size_t> out;
    for (const auto& sub : subsets(b.size(), static_cast<std::size_t>(t))) {
      std::vector<Point> mapped;
      for (auto i : sub) mapped.push_back(b[i]);
      out.push_back(tindex[mapped]);
    }
    return out;
  };
  for (const auto& b : s.blocks())
    for (auto i : tsubsets_of(b)) ++count[i];
  for (auto c : count)
    if (c > lambda) return 0;

  std::vector<Block> cands;
  std::vector<std::vector<std::size_t>> cand_t;
  for (const auto& b : subsets(static_cast<std::size_t>(v), static_cast<std::size_t>(k))) {
    if (std::binary_search(s.blocks().begin(), s.blocks().end(), b)) continue;
    auto ts = tsubsets_of(b);
    if (std::any_of(ts.begin(), ts.end(), [&](std::size_t i) { return count[i] >= lambda; })) continue;
    cands.push_back(b);
    cand_t.push_back(std::move(ts));
  }
  // remaining[i][j]: candidates after position i containing the j-th t-subset of candidate i.
  std::vector<std::vector<int>> remaining(cands.size());
  {
    std::vector<int> seen(tsubs.size(), 0);
    std::vector<int> total(tsubs.size(), 0);
    for (const auto& ts : cand_t)
      for (auto i : ts) ++total[i];
    for (std::size_t c = 0; c < cands.size(); ++c)
      for (auto i : cand_t[c]) {
        ++seen[i];
        remaining[c].push_back(total[i] - seen[i]);
      }
    for (std::size_t i = 0; i < tsubs.size(); ++i)
      if (total[i] + count[i] < lambda) return 0;
  }

  std::uint64_t found = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t c) {
    if (found >= cap) return;
    if (c == cands.size()) {
      if (std::all_of(count.begin(), count.end(), [&](int x) { return x == lambda; })) ++found;
      return;
    }
    const auto& ts = cand_t[c];
    bool can_take = true;
    for (auto i : ts) can_take = can_take && count[i] < lambda;
    if (can_take) {
      for (auto i : ts) ++count[i];
      bool ok = true;
      for (std::size_t j = 0; j < ts.size(); ++j) ok = ok && count[ts[j]] + remaining[c][j] >= lambda;
      if (ok) rec(c + 1);
      for (auto i : ts) --count[i];
    }
    bool ok = true;
    for (std::size_t j = 0; j < ts.size(); ++j) ok = ok && count[ts[j]] + remaining[c][j] >= lambda;
    if (ok) rec(c + 1);
  };
  rec(0);
  return found;
}

/// Applies a random point relabeling.
inline IncidenceStructure relabel(const IncidenceStructure& s, std::uint64_t seed) {
  std::vector<Point> perm(s.num_points());
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Block> blocks;
  for (const auto& b : s.blocks()) {
    Block nb;
    for (auto p : b) nb.push_back(perm[p]);
    blocks.push_back(std::move(nb));
  }
  return IncidenceStructure(s.num_points(), std::move(blocks));
}

/// Greedy random packing of n-subsets of n^2 points with pairwise intersections <= 1.
inline IncidenceStructure random_packing(std::size_t n, std::uint64_t seed, std::size_t attempts = 4000) {
  std::mt19937_64 rng(seed);
  std::vector<Block> blocks;
  std::vector<Point> pts(n * n);
  std::iota(pts.begin(), pts.end(), 0);
  for (std::size_t a = 0; a < attempts; ++a) {
    std::shuffle(pts.begin(), pts.end(), rng);
    Block b(pts.begin(), pts.begin() + static_cast<long>(n));
    std::sort(b.begin(), b.end());
    bool ok = true;
    for (const auto& o : blocks) ok = ok && common_points(o, b) <= 1;
    if (ok) blocks.push_back(std::move(b));
  }
  return IncidenceStructure(n * n, std::move(blocks));
}

/// Lines of the Fano plane placed on the first 7 of 9 points: a PAP of order 3.
inline IncidenceStructure fano_in_nine() {
  return IncidenceStructure(9, {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}});
}

/// Lines of PG(2,n-1) placed on n^2 points, minus `drop` seeded lines. Any two lines
/// meet, so each is its own parallel class and n - 1 or more points lie on no line.
inline IncidenceStructure projective_in_square(std::size_t n, std::size_t drop, std::uint64_t seed) {
  const auto pg = projective_plane(static_cast<int>(n - 1));
  std::vector<std::size_t> idx(pg.num_blocks());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(drop);
  return relabel(IncidenceStructure(n * n, delete_blocks(pg, idx).blocks()), seed);
}

/// Parallel classes of an affine plane, each as ascending block indices, ordered by first index.
inline std::vector<std::vector<std::size_t>> affine_classes(const IncidenceStructure& ag) {
  std::vector<std::vector<std::size_t>> classes;
  std::vector<bool> used(ag.num_blocks(), false);
  for (std::size_t i = 0; i < ag.num_blocks(); ++i) {
    if (used[i]) continue;
    std::vector<std::size_t> cls{i};
    used[i] = true;
    for (std::size_t j = i + 1; j < ag.num_blocks(); ++j)
      if (!used[j] && common_points(ag.block(i), ag.block(j)) == 0) {
        cls.push_back(j);
        used[j] = true;
      }
    classes.push_back(std::move(cls));
  }
  return classes;
}

/// AG(2,n) minus n + a lines: one whole class plus `a` random others, so no point keeps n + 1 lines.
inline IncidenceStructure affine_minus_class_and(std::size_t n, std::size_t a, std::uint64_t seed) {
  const auto ag = affine_plane(static_cast<int>(n));
  const auto classes = affine_classes(ag);
  std::mt19937_64 rng(seed);
  const auto& whole = classes[rng() % classes.size()];
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < ag.num_blocks(); ++i)
    if (std::find(whole.begin(), whole.end(), i) == whole.end()) rest.push_back(i);
  std::shuffle(rest.begin(), rest.end(), rng);
  std::vector<std::size_t> drop(whole.begin(), whole.end());
  drop.insert(drop.end(), rest.begin(), rest.begin() + static_cast<long>(a));
  return delete_blocks(ag, drop);
}

}  // namespace papc::testing
