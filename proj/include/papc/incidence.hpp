#pragma once

// Incidence structures: a finite point set {0, ..., v-1} together with a set of
// blocks (lines, circles). Blocks are kept both as ascending index lists and as
// bitsets; every intersection test goes through the bitset form.

#include <papc/error.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace papc {

using Point = std::uint32_t;
using Block = std::vector<Point>;

/// Fixed-width bitset over the points of one structure.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

  [[nodiscard]] std::size_t universe() const noexcept { return universe_; }

  void set(Point p) noexcept { words_[p >> 6] |= std::uint64_t{1} << (p & 63); }
  void reset(Point p) noexcept { words_[p >> 6] &= ~(std::uint64_t{1} << (p & 63)); }
  [[nodiscard]] bool test(Point p) const noexcept { return (words_[p >> 6] >> (p & 63)) & 1U; }

  [[nodiscard]] std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  /// |this ∩ other|; both sets must share the universe.
  [[nodiscard]] std::size_t intersection_count(const PointSet& other) const noexcept {
    std::size_t c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) c += static_cast<std::size_t>(std::popcount(words_[i] & other.words_[i]));
    return c;
  }

  [[nodiscard]] bool intersects(const PointSet& other) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & other.words_[i]) return true;
    return false;
  }

  PointSet& operator|=(const PointSet& other) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
  }
  PointSet& operator&=(const PointSet& other) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
    return *this;
  }

  [[nodiscard]] PointSet complement() const {
    PointSet out(universe_);
    for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = ~words_[i];
    if (universe_ % 64 != 0 && !out.words_.empty()) out.words_.back() &= (std::uint64_t{1} << (universe_ % 64)) - 1;
    return out;
  }

  [[nodiscard]] std::vector<Point> to_vector() const {
    std::vector<Point> out;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      auto w = words_[i];
      while (w) {
        out.push_back(static_cast<Point>(i * 64 + static_cast<std::size_t>(std::countr_zero(w))));
        w &= w - 1;
      }
    }
    return out;
  }

  bool operator==(const PointSet&) const = default;

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Parameters (t, v, k, lambda) of a (partial) t-design.
struct DesignParams {
  int t = 2;
  int v = 0;
  int k = 0;
  int lambda = 1;

  [[nodiscard]] bool valid() const noexcept { return t >= 2 && lambda >= 1 && t <= k && k <= v; }
  bool operator==(const DesignParams&) const = default;
};

/// A k-GDD of type group_size^group_count.
struct GddType {
  int k = 0;
  int group_size = 0;
  int group_count = 0;
};

/// Immutable point/block incidence structure in canonical form: every block
/// ascending, blocks in lexicographic order, no repeated block.
class IncidenceStructure {
 public:
  IncidenceStructure() = default;

  IncidenceStructure(std::size_t num_points, std::vector<Block> blocks) : num_points_(num_points) {
    for (auto& b : blocks) {
      for (auto p : b) {
        if (p >= num_points_)
          throw Error(ErrorCode::IndexOutOfRange,
                      "point " + std::to_string(p) + " not in [0, " + std::to_string(num_points_) + ")");
      }
      std::sort(b.begin(), b.end());
      if (std::adjacent_find(b.begin(), b.end()) != b.end())
        throw Error(ErrorCode::DuplicatePointInBlock, "block repeats a point");
    }
    std::sort(blocks.begin(), blocks.end());
    if (auto it = std::adjacent_find(blocks.begin(), blocks.end()); it != blocks.end())
      throw Error(ErrorCode::DuplicateBlock, "block " + describe(*it) + " appears twice");
    blocks_ = std::move(blocks);

    sets_.reserve(blocks_.size());
    point_blocks_.assign(num_points_, {});
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      PointSet s(num_points_);
      for (auto p : blocks_[i]) {
        s.set(p);
        point_blocks_[p].push_back(static_cast<std::uint32_t>(i));
      }
      sets_.push_back(std::move(s));
    }
  }

  [[nodiscard]] std::size_t num_points() const noexcept { return num_points_; }
  [[nodiscard]] std::size_t num_blocks() const noexcept { return blocks_.size(); }
  [[nodiscard]] const std::vector<Block>& blocks() const noexcept { return blocks_; }
  [[nodiscard]] const Block& block(std::size_t i) const { return blocks_.at(i); }
  [[nodiscard]] const PointSet& block_set(std::size_t i) const { return sets_.at(i); }

  /// Indices of the blocks through p, ascending.
  [[nodiscard]] std::span<const std::uint32_t> blocks_through(Point p) const {
    check_point(p);
    return point_blocks_[p];
  }

  [[nodiscard]] std::size_t meet_count(std::size_t i, std::size_t j) const {
    return sets_.at(i).intersection_count(sets_.at(j));
  }

  [[nodiscard]] std::optional<std::size_t> find_block(Block b) const {
    std::sort(b.begin(), b.end());
    auto it = std::lower_bound(blocks_.begin(), blocks_.end(), b);
    if (it == blocks_.end() || *it != b) return std::nullopt;
    return static_cast<std::size_t>(it - blocks_.begin());
  }

  /// Uniform block size, or nullopt when blocks differ in size or there are none.
  [[nodiscard]] std::optional<std::size_t> block_size() const {
    if (blocks_.empty()) return std::nullopt;
    auto k = blocks_.front().size();
    for (const auto& b : blocks_)
      if (b.size() != k) return std::nullopt;
    return k;
  }

  void check_point(Point p) const {
    if (p >= num_points_)
      throw Error(ErrorCode::IndexOutOfRange, "point " + std::to_string(p) + " out of range");
  }
  void check_block(std::size_t i) const {
    if (i >= blocks_.size())
      throw Error(ErrorCode::IndexOutOfRange, "block " + std::to_string(i) + " out of range");
  }

  bool operator==(const IncidenceStructure& o) const { return num_points_ == o.num_points_ && blocks_ == o.blocks_; }

  static std::string describe(const Block& b) {
    std::string s = "{";
    for (std::size_t i = 0; i < b.size(); ++i) s += (i ? "," : "") + std::to_string(b[i]);
    return s + "}";
  }

 private:
  std::size_t num_points_ = 0;
  std::vector<Block> blocks_;
  std::vector<PointSet> sets_;
  std::vector<std::vector<std::uint32_t>> point_blocks_;
};

/// Same point count, blocks with extra ones appended (re-canonicalized).
inline IncidenceStructure with_blocks(const IncidenceStructure& s, const std::vector<Block>& extra) {
  auto blocks = s.blocks();
  blocks.insert(blocks.end(), extra.begin(), extra.end());
  return IncidenceStructure(s.num_points(), std::move(blocks));
}

inline std::size_t valency(const IncidenceStructure& s, Point p) { return s.blocks_through(p).size(); }

/// Points sharing at least one block with p (p itself excluded).
inline PointSet joined_set(const IncidenceStructure& s, Point p) {
  PointSet out(s.num_points());
  for (auto bi : s.blocks_through(p)) out |= s.block_set(bi);
  out.reset(p);
  return out;
}

inline PointSet unjoined_set(const IncidenceStructure& s, Point p) {
  auto out = joined_set(s, p).complement();
  out.reset(p);
  return out;
}

inline bool pairwise_meet_at_most_one(const IncidenceStructure& s) {
  for (std::size_t i = 0; i < s.num_blocks(); ++i)
    for (std::size_t j = i + 1; j < s.num_blocks(); ++j)
      if (s.meet_count(i, j) > 1) return false;
  return true;
}

inline std::optional<std::size_t> exact_sqrt(std::size_t v) {
  auto r = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(v))));
  for (auto c : {r == 0 ? 0 : r - 1, r, r + 1})
    if (c * c == v) return c;
  return std::nullopt;
}

/// The order n when s is a partial affine plane (n^2 points, n-point lines,
/// pairwise meeting in at most one point, n >= 2).
inline std::optional<std::size_t> pap_order(const IncidenceStructure& s) {
  auto n = exact_sqrt(s.num_points());
  if (!n || *n < 2) return std::nullopt;
  for (const auto& b : s.blocks())
    if (b.size() != *n) return std::nullopt;
  if (!pairwise_meet_at_most_one(s)) return std::nullopt;
  return n;
}

inline std::size_t require_pap(const IncidenceStructure& s) {
  auto n = pap_order(s);
  if (!n) throw Error(ErrorCode::NotAPap, "structure is not a partial affine plane");
  return *n;
}

/// Number of points Q != p on no common block with p, counted directly.
inline std::size_t unjoined_count(const IncidenceStructure& s, Point p) {
  require_pap(s);
  return unjoined_set(s, p).count();
}

namespace detail {

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Counts how many blocks cover each t-subset of the points.
class TupleCounter {
 public:
  TupleCounter(std::size_t v, std::size_t t) : v_(v), t_(t) {
    table_.assign(v + 1, std::vector<std::uint64_t>(t + 1, 0));
    for (std::size_t n = 0; n <= v; ++n)
      for (std::size_t k = 0; k <= t; ++k) table_[n][k] = binomial(n, k);
    total_ = binomial(v, t);
    dense_ = total_ <= (std::uint64_t{1} << 26);
    if (dense_) dense_counts_.assign(total_, 0);
  }

  [[nodiscard]] std::uint64_t total() const noexcept { return total_; }

  /// Colex rank of an ascending t-subset.
  [[nodiscard]] std::uint64_t rank(std::span<const Point> tuple) const {
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < tuple.size(); ++i) r += table_[tuple[i]][i + 1];
    return r;
  }

  /// Adds one to every t-subset of the ascending block; returns the largest resulting count.
  int add_block(std::span<const Point> block) {
    int worst = 0;
    if (block.size() < t_) return worst;
    std::vector<std::size_t> idx(t_);
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<Point> tuple(t_);
    while (true) {
      for (std::size_t i = 0; i < t_; ++i) tuple[i] = block[idx[i]];
      worst = std::max(worst, bump(rank(tuple)));
      std::size_t i = t_;
      while (i > 0 && idx[i - 1] == block.size() - t_ + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < t_; ++j) idx[j] = idx[j - 1] + 1;
    }
    return worst;
  }

  /// True iff every t-subset is covered exactly lambda times.
  [[nodiscard]] bool all_equal(int lambda) const {
    if (dense_) {
      return std::all_of(dense_counts_.begin(), dense_counts_.end(), [&](std::uint16_t c) { return c == lambda; });
    }
    if (sparse_counts_.size() != total_) return false;
    return std::all_of(sparse_counts_.begin(), sparse_counts_.end(), [&](const auto& kv) { return kv.second == lambda; });
  }

 private:
  int bump(std::uint64_t r) {
    if (dense_) return ++dense_counts_[r];
    return ++sparse_counts_[r];
  }

  std::size_t v_;
  std::size_t t_;
  std::vector<std::vector<std::uint64_t>> table_;
  std::uint64_t total_ = 0;
  bool dense_ = true;
  std::vector<std::uint16_t> dense_counts_;
  std::unordered_map<std::uint64_t, int> sparse_counts_;
};

/// For t = 2: per-point partner counting, O(b k^2) and no C(v,2) table.
inline bool pair_coverage_ok(const IncidenceStructure& s, int lambda, bool exact) {
  std::vector<int> seen(s.num_points(), 0);
  for (Point p = 0; p < s.num_points(); ++p) {
    std::fill(seen.begin(), seen.end(), 0);
    std::size_t distinct = 0;
    for (auto bi : s.blocks_through(p)) {
      for (auto q : s.block(bi)) {
        if (q == p) continue;
        if (seen[q]++ == 0) ++distinct;
        if (seen[q] > lambda) return false;
      }
    }
    if (exact) {
      if (distinct != s.num_points() - 1) return false;
      for (Point q = 0; q < s.num_points(); ++q)
        if (q != p && seen[q] != lambda) return false;
    }
  }
  return true;
}

inline bool shape_matches(const IncidenceStructure& s, const DesignParams& params) {
  if (!params.valid()) return false;
  if (s.num_points() != static_cast<std::size_t>(params.v)) return false;
  return std::all_of(s.blocks().begin(), s.blocks().end(),
                     [&](const Block& b) { return b.size() == static_cast<std::size_t>(params.k); });
}

}  // namespace detail

/// Every t-subset of points lies in at most lambda blocks.
inline bool is_partial_design(const IncidenceStructure& s, const DesignParams& params) {
  if (!detail::shape_matches(s, params)) return false;
  if (params.t == 2) return detail::pair_coverage_ok(s, params.lambda, false);
  detail::TupleCounter counter(s.num_points(), static_cast<std::size_t>(params.t));
  for (const auto& b : s.blocks())
    if (counter.add_block(b) > params.lambda) return false;
  return true;
}

/// Every t-subset of points lies in exactly lambda blocks.
inline bool is_design(const IncidenceStructure& s, const DesignParams& params) {
  if (!detail::shape_matches(s, params)) return false;
  const auto need = detail::binomial(static_cast<std::uint64_t>(params.v), static_cast<std::uint64_t>(params.t)) *
                    static_cast<std::uint64_t>(params.lambda);
  const auto have = detail::binomial(static_cast<std::uint64_t>(params.k), static_cast<std::uint64_t>(params.t)) *
                    s.num_blocks();
  if (need != have) return false;
  if (params.t == 2) return detail::pair_coverage_ok(s, params.lambda, true);
  detail::TupleCounter counter(s.num_points(), static_cast<std::size_t>(params.t));
  for (const auto& b : s.blocks())
    if (counter.add_block(b) > params.lambda) return false;
  return counter.all_equal(params.lambda);
}

/// A structure together with the original index of each of its points.
struct Reindexed {
  IncidenceStructure structure;
  std::vector<Point> to_original;

  [[nodiscard]] std::optional<Point> to_local(Point original) const {
    auto it = std::lower_bound(to_original.begin(), to_original.end(), original);
    if (it == to_original.end() || *it != original) return std::nullopt;
    return static_cast<Point>(it - to_original.begin());
  }
};

/// Derived structure at p: the other points, and the blocks through p with p removed.
inline Reindexed derived_at(const IncidenceStructure& s, Point p) {
  s.check_point(p);
  Reindexed out;
  out.to_original.reserve(s.num_points() - 1);
  for (Point q = 0; q < s.num_points(); ++q)
    if (q != p) out.to_original.push_back(q);
  std::vector<Block> blocks;
  for (auto bi : s.blocks_through(p)) {
    Block b;
    for (auto q : s.block(bi))
      if (q != p) b.push_back(q < p ? q : q - 1);
    blocks.push_back(std::move(b));
  }
  out.structure = IncidenceStructure(s.num_points() - 1, std::move(blocks));
  return out;
}

/// Dual structure plus, for each original point, the index of its block in the dual.
struct DualResult {
  IncidenceStructure structure;
  std::vector<std::size_t> block_of_point;
};

inline DualResult dual(const IncidenceStructure& s) {
  std::vector<Block> blocks;
  blocks.reserve(s.num_points());
  for (Point p = 0; p < s.num_points(); ++p) {
    auto through = s.blocks_through(p);
    if (through.empty()) throw Error(ErrorCode::IsolatedPoint, "point " + std::to_string(p) + " lies on no block");
    blocks.emplace_back(through.begin(), through.end());
  }
  DualResult out;
  out.structure = IncidenceStructure(s.num_blocks(), blocks);
  out.block_of_point.reserve(blocks.size());
  for (const auto& b : blocks) out.block_of_point.push_back(*out.structure.find_block(b));
  return out;
}

/// Recovers the groups of a k-GDD of the given type, if s is one.
inline std::optional<std::vector<std::vector<Point>>> is_group_divisible(const IncidenceStructure& s,
                                                                        const GddType& gdd) {
  if (gdd.k < 1 || gdd.group_size < 1 || gdd.group_count < 1) return std::nullopt;
  const auto v = s.num_points();
  if (v != static_cast<std::size_t>(gdd.group_size) * static_cast<std::size_t>(gdd.group_count)) return std::nullopt;
  for (const auto& b : s.blocks())
    if (b.size() != static_cast<std::size_t>(gdd.k)) return std::nullopt;

  // Cross-group pairs are covered exactly once; no pair may be covered twice.
  if (!detail::pair_coverage_ok(s, 1, false)) return std::nullopt;

  std::vector<Point> parent(v);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Point x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<PointSet> unjoined;
  unjoined.reserve(v);
  for (Point p = 0; p < v; ++p) unjoined.push_back(unjoined_set(s, p));
  for (Point p = 0; p < v; ++p)
    for (auto q : unjoined[p].to_vector())
      if (q > p) parent[find(q)] = find(p);

  std::vector<std::vector<Point>> groups;
  std::vector<int> slot(v, -1);
  for (Point p = 0; p < v; ++p) {
    auto r = find(p);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    groups[static_cast<std::size_t>(slot[r])].push_back(p);
  }
  if (groups.size() != static_cast<std::size_t>(gdd.group_count)) return std::nullopt;
  for (const auto& g : groups) {
    if (g.size() != static_cast<std::size_t>(gdd.group_size)) return std::nullopt;
    // Within a group every pair is unjoined, and each point is joined to everything outside it.
    for (auto p : g) {
      if (unjoined[p].count() != g.size() - 1) return std::nullopt;
      for (auto q : g)
        if (q != p && !unjoined[p].test(q)) return std::nullopt;
    }
  }
  return groups;
}

}  // namespace papc
