#pragma once

// Exhaustive completion of partial t-(v,k,lambda) designs.
//
// The search always branches on the colex-first t-subset that is still covered
// fewer than lambda times, trying every admissible block through it. A block is
// admissible when all of its t-subsets are still under-covered; candidates are
// grown point by point in ascending index order. Under this rule each
// completion (as a set of added blocks) is reached exactly once, so counts are
// raw and deterministic.
//
// Parallel runs split the root branching over worker threads. Counts, the
// exhausted flag and the reported first completion are identical to the
// sequential run unless the node budget is hit.

#include <papc/error.hpp>
#include <papc/incidence.hpp>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

namespace papc {

enum class Method { LowValency, ProjectiveEmbed, OracleSearch, InversiveGlue };

inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::LowValency: return "low-valency";
    case Method::ProjectiveEmbed: return "projective-embed";
    case Method::OracleSearch: return "oracle-search";
    case Method::InversiveGlue: return "inversive-glue";
  }
  return "unknown";
}

struct CompletionResult {
  IncidenceStructure completed;
  std::vector<Block> added_blocks;  // canonical order
  Method method = Method::OracleSearch;
  std::vector<std::string> certificate;
};

enum class OracleMode { First, CountAll };

inline constexpr std::uint64_t kDefaultNodeBudget = 100'000'000;

struct OracleOptions {
  OracleMode mode = OracleMode::First;
  /// CountAll stops once this many completions are found.
  std::optional<std::uint64_t> limit;
  unsigned threads = 1;
  std::uint64_t node_budget = kDefaultNodeBudget;
};

struct OracleOutcome {
  std::uint64_t completions_found = 0;
  std::optional<CompletionResult> first_completion;
  bool exhausted = false;         // the whole search space was enumerated
  bool budget_exhausted = false;  // stopped by the node budget
  std::uint64_t nodes = 0;

  [[nodiscard]] bool certifies_none() const noexcept { return exhausted && completions_found == 0; }
};

namespace detail {

struct BudgetStop {};

class DesignSearch {
 public:
  DesignSearch(const IncidenceStructure& s, const DesignParams& params, std::atomic<std::uint64_t>& nodes,
               std::uint64_t budget)
      : v_(static_cast<std::size_t>(params.v)),
        t_(static_cast<std::size_t>(params.t)),
        k_(static_cast<std::size_t>(params.k)),
        lambda_(params.lambda),
        nodes_(&nodes),
        budget_(budget) {
    table_.assign(v_ + 1, std::vector<std::uint64_t>(t_ + 1, 0));
    for (std::size_t n = 0; n <= v_; ++n)
      for (std::size_t j = 0; j <= t_; ++j) table_[n][j] = binomial(n, j);
    const auto total = binomial(v_, t_);
    if (total > (std::uint64_t{1} << 27))
      throw Error(ErrorCode::TooLarge, "too many t-subsets for the completion oracle");
    counts_.assign(total, 0);
    for (const auto& b : s.blocks()) apply(b, +1);
    if (lambda_ > 1)
      for (const auto& b : s.blocks()) present_.insert(b);
  }

  [[nodiscard]] std::uint64_t total() const noexcept { return counts_.size(); }

  /// Colex-first under-covered t-subset at or after `from`.
  [[nodiscard]] std::optional<std::uint64_t> first_open(std::uint64_t from) const {
    for (auto r = from; r < counts_.size(); ++r)
      if (counts_[r] < lambda_) return r;
    return std::nullopt;
  }

  [[nodiscard]] std::vector<Point> unrank(std::uint64_t r) const {
    std::vector<Point> out(t_);
    std::size_t c = v_;
    for (std::size_t i = t_; i >= 1; --i) {
      while (table_[c][i] > r) --c;
      out[i - 1] = static_cast<Point>(c);
      r -= table_[c][i];
    }
    return out;
  }

  /// Admissible blocks through the t-subset, in ascending order of the added points.
  std::vector<Block> candidates(const std::vector<Point>& tuple) {
    std::vector<Block> out;
    Block current(tuple.begin(), tuple.end());
    std::vector<bool> in_tuple(v_, false);
    for (auto p : tuple) in_tuple[p] = true;
    grow(current, 0, in_tuple, out);
    return out;
  }

  void apply(const Block& b, int delta) {
    for_each_subset(b, [&](std::uint64_t r) { counts_[r] = static_cast<std::uint16_t>(counts_[r] + delta); });
  }

  /// Necessary condition for t = 2: the open pairs at each point split into (k-1)-sets.
  [[nodiscard]] bool pair_divisibility_ok() const {
    if (t_ != 2) return true;
    for (Point x = 0; x < v_; ++x) {
      std::uint64_t deficit = 0;
      for (Point y = 0; y < v_; ++y)
        if (y != x) deficit += static_cast<std::uint64_t>(lambda_ - counts_[pair_rank(x, y)]);
      if (deficit % (k_ - 1) != 0) return false;
    }
    return true;
  }

  /// Candidates for the open t-subset `open`, minus blocks already present and,
  /// when the same t-subset was just branched on, blocks not after `last_block`.
  std::vector<Block> branch_candidates(std::uint64_t open, std::optional<std::uint64_t> last_rank,
                                       const Block* last_block) {
    auto cands = candidates(unrank(open));
    if (lambda_ > 1) {
      std::erase_if(cands, [&](const Block& b) {
        if (last_rank && *last_rank == open && last_block && !(*last_block < b)) return true;
        return present_.count(b) > 0;
      });
    }
    return cands;
  }

  void place(const Block& b) {
    apply(b, +1);
    if (lambda_ > 1) present_.insert(b);
  }

  void unplace(const Block& b) {
    apply(b, -1);
    if (lambda_ > 1) present_.erase(b);
  }

  /// Runs the search below the current state. Returns false when stopped early.
  template <typename OnSolution>
  bool run(std::uint64_t from, std::optional<std::uint64_t> last_rank, const Block* last_block,
           std::vector<Block>& added, OnSolution&& on_solution) {
    tick();
    auto open = first_open(from);
    if (!open) return on_solution(added);
    auto cands = branch_candidates(*open, last_rank, last_block);
    for (auto& b : cands) {
      place(b);
      added.push_back(b);
      const bool keep_going = run(*open, *open, &b, added, on_solution);
      added.pop_back();
      unplace(b);
      if (!keep_going) return false;
    }
    return true;
  }

  void tick() {
    if (nodes_->fetch_add(1, std::memory_order_relaxed) + 1 > budget_) throw BudgetStop{};
  }

 private:
  [[nodiscard]] std::uint64_t pair_rank(Point a, Point b) const {
    if (a > b) std::swap(a, b);
    return table_[a][1] + table_[b][2];
  }

  [[nodiscard]] std::uint64_t rank(const std::vector<Point>& tuple) const {
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < tuple.size(); ++i) r += table_[tuple[i]][i + 1];
    return r;
  }

  template <typename F>
  void for_each_subset(const Block& b, F&& f) const {
    if (b.size() < t_) return;
    std::vector<std::size_t> idx(t_);
    for (std::size_t i = 0; i < t_; ++i) idx[i] = i;
    std::vector<Point> tuple(t_);
    while (true) {
      for (std::size_t i = 0; i < t_; ++i) tuple[i] = b[idx[i]];
      f(rank(tuple));
      std::size_t i = t_;
      while (i > 0 && idx[i - 1] == b.size() - t_ + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < t_; ++j) idx[j] = idx[j - 1] + 1;
    }
  }

  /// True when every t-subset made of p and t-1 points of `current` is under-covered.
  [[nodiscard]] bool fits(const Block& current, Point p) const {
    if (t_ == 2) {
      for (auto x : current)
        if (counts_[pair_rank(x, p)] >= lambda_) return false;
      return true;
    }
    // Choose t-1 points of current (ascending), add p, sort.
    const std::size_t need = t_ - 1;
    std::vector<std::size_t> idx(need);
    for (std::size_t i = 0; i < need; ++i) idx[i] = i;
    std::vector<Point> tuple(t_);
    while (true) {
      std::size_t w = 0;
      bool placed = false;
      for (std::size_t i = 0; i < need; ++i) {
        const auto x = current[idx[i]];
        if (!placed && p < x) {
          tuple[w++] = p;
          placed = true;
        }
        tuple[w++] = x;
      }
      if (!placed) tuple[w++] = p;
      if (counts_[rank(tuple)] >= lambda_) return false;
      std::size_t i = need;
      while (i > 0 && idx[i - 1] == current.size() - need + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < need; ++j) idx[j] = idx[j - 1] + 1;
    }
    return true;
  }

  void grow(Block& current, Point next, const std::vector<bool>& in_tuple, std::vector<Block>& out) {
    if (current.size() == k_) {
      Block sorted = current;
      std::sort(sorted.begin(), sorted.end());
      out.push_back(std::move(sorted));
      return;
    }
    const auto missing = k_ - current.size();
    for (Point p = next; p < v_; ++p) {
      if (v_ - p < missing) break;
      if (in_tuple[p] || !fits(current, p)) continue;
      tick();
      current.push_back(p);
      grow(current, p + 1, in_tuple, out);
      current.pop_back();
    }
  }

  std::size_t v_;
  std::size_t t_;
  std::size_t k_;
  int lambda_;
  std::atomic<std::uint64_t>* nodes_;
  std::uint64_t budget_;
  std::vector<std::vector<std::uint64_t>> table_;
  std::vector<std::uint16_t> counts_;
  std::set<Block> present_;
};

struct BranchResult {
  std::uint64_t count = 0;
  std::optional<std::vector<Block>> first;
  bool finished = false;  // enumerated the branch completely
  bool budget = false;
  bool limit_hit = false;
};

inline CompletionResult make_oracle_result(const IncidenceStructure& s, std::vector<Block> added,
                                           const DesignParams& params) {
  CompletionResult r;
  std::sort(added.begin(), added.end());
  r.completed = with_blocks(s, added);
  r.added_blocks = std::move(added);
  r.method = Method::OracleSearch;
  r.certificate.push_back("oracle: exhaustive search for a " + std::to_string(params.t) + "-(" +
                          std::to_string(params.v) + "," + std::to_string(params.k) + "," +
                          std::to_string(params.lambda) + ") design containing the input");
  return r;
}

}  // namespace detail

/// Searches for completions of s to a full design with the given parameters.
inline OracleOutcome oracle_complete(const IncidenceStructure& s, const DesignParams& params,
                                     const OracleOptions& options = {}) {
  if (!is_partial_design(s, params))
    throw Error(ErrorCode::InvalidInput, "input is not a partial design with the requested parameters");
  const std::uint64_t limit =
      options.mode == OracleMode::First ? 1 : options.limit.value_or(std::numeric_limits<std::uint64_t>::max());
  if (limit == 0) throw Error(ErrorCode::InvalidInput, "completion limit must be positive");

  std::atomic<std::uint64_t> nodes{0};
  OracleOutcome out;
  detail::DesignSearch root(s, params, nodes, options.node_budget);

  auto finish = [&](std::vector<detail::BranchResult> branches) {
    bool all_finished = true;
    for (const auto& br : branches) {
      out.completions_found += br.count;
      if (!out.first_completion && br.first)
        out.first_completion = detail::make_oracle_result(s, *br.first, params);
      if (br.budget) out.budget_exhausted = true;
      if (!br.finished) all_finished = false;
    }
    if (out.completions_found >= limit) {
      out.completions_found = limit;
      out.exhausted = false;
    } else {
      out.exhausted = all_finished && !out.budget_exhausted;
    }
    if (out.budget_exhausted) out.exhausted = false;
    out.nodes = nodes.load();
    if (out.first_completion) {
      auto& cert = out.first_completion->certificate;
      cert.push_back("oracle: " + std::to_string(out.nodes) + " nodes, " + std::to_string(out.completions_found) +
                     " completion(s) found" + (out.exhausted ? ", search exhausted" : ""));
    }
    return out;
  };

  if (!root.pair_divisibility_ok()) {
    out.exhausted = true;
    out.nodes = 0;
    return out;
  }

  auto run_branch = [&](detail::DesignSearch& search, std::uint64_t from, std::optional<std::uint64_t> last_rank,
                        const Block* last_block, std::vector<Block> added, std::uint64_t branch_limit,
                        const std::atomic<std::size_t>* stop_above, std::size_t branch_index) {
    detail::BranchResult br;
    try {
      const bool done = search.run(from, last_rank, last_block, added, [&](const std::vector<Block>& sol) {
        if (!br.first) br.first = sol;
        ++br.count;
        if (br.count >= branch_limit) {
          br.limit_hit = true;
          return false;
        }
        if (stop_above && stop_above->load() < branch_index) return false;
        return true;
      });
      br.finished = done;
    } catch (const detail::BudgetStop&) {
      br.budget = true;
    }
    return br;
  };

  const auto open = root.first_open(0);
  if (!open || options.threads <= 1) {
    std::vector<detail::BranchResult> one;
    one.push_back(run_branch(root, 0, std::nullopt, nullptr, {}, limit, nullptr, 0));
    return finish(std::move(one));
  }

  // Root split: each candidate through the first open t-subset is one branch.
  std::vector<Block> cands;
  try {
    root.tick();
    cands = root.branch_candidates(*open, std::nullopt, nullptr);
  } catch (const detail::BudgetStop&) {
    detail::BranchResult br;
    br.budget = true;
    return finish({br});
  }
  std::vector<detail::BranchResult> results(cands.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best_found{std::numeric_limits<std::size_t>::max()};
  const bool first_mode = options.mode == OracleMode::First;

  auto worker = [&]() {
    while (true) {
      const auto i = next.fetch_add(1);
      if (i >= cands.size()) return;
      if (first_mode && best_found.load() < i) {
        results[i].finished = true;  // not needed: a lower branch already has the canonical first completion
        continue;
      }
      detail::DesignSearch search = root;
      search.place(cands[i]);
      std::vector<Block> added{cands[i]};
      Block first_block = cands[i];
      results[i] = run_branch(search, *open, *open, &first_block, added, limit,
                              first_mode ? &best_found : nullptr, i);
      if (first_mode && results[i].count > 0) {
        auto cur = best_found.load();
        while (i < cur && !best_found.compare_exchange_weak(cur, i)) {
        }
      }
    }
  };
  std::vector<std::jthread> pool;
  const auto workers = std::min<std::size_t>(options.threads, std::max<std::size_t>(cands.size(), 1));
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  pool.clear();

  if (first_mode) {
    // Branches above the winner may have stopped early; they do not affect the answer.
    const auto best = best_found.load();
    if (best != std::numeric_limits<std::size_t>::max()) {
      results.resize(best + 1);
      results[best].finished = false;
    }
  }
  return finish(std::move(results));
}

/// Completion of a partial projective plane of order n by the oracle.
inline OracleOutcome complete_partial_projective_search(const IncidenceStructure& s, std::size_t n,
                                                        const OracleOptions& options = {}) {
  const auto v = n * n + n + 1;
  if (n < 2 || s.num_points() != v)
    throw Error(ErrorCode::InvalidInput, "a partial projective plane of order n has n^2+n+1 points");
  for (const auto& b : s.blocks())
    if (b.size() != n + 1) throw Error(ErrorCode::InvalidInput, "lines of a projective plane of order n have n+1 points");
  if (!pairwise_meet_at_most_one(s)) throw Error(ErrorCode::InvalidInput, "two lines share more than one point");
  const DesignParams params{2, static_cast<int>(v), static_cast<int>(n + 1), 1};
  return oracle_complete(s, params, options);
}

}  // namespace papc
