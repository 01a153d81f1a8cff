#pragma once

// Completion of partial affine planes and partial 2-(n^d, n, 1) designs.
//
// complete_pap follows the constructive routes available for a partial affine
// plane of order n with b lines in which parallelism is an equivalence:
//
//   1. some point on n+1 lines: the lines through it force exactly n+1 classes,
//      so one new point per class plus a line through the new points gives a
//      partial projective plane; complete that and strip the added line;
//   2. b = n^2 and every point on n lines: add {P} plus the points unjoined to P;
//   3. b = n^2 - a with 1 <= a < min(sqrt n, n^2 - g(n) + 1): the classes are
//      shown to number at most n+1 and route 1's embedding applies;
//   4. otherwise the exhaustive oracle decides.
//
// Hypotheses are re-verified here and recorded in the certificate.

#include <papc/bounds.hpp>
#include <papc/incidence.hpp>
#include <papc/oracle.hpp>
#include <papc/parallelism.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace papc {

namespace detail {

inline std::string str(std::size_t x) { return std::to_string(x); }

inline std::vector<Block> block_difference(const IncidenceStructure& big, const IncidenceStructure& small) {
  std::vector<Block> out;
  std::set_difference(big.blocks().begin(), big.blocks().end(), small.blocks().begin(), small.blocks().end(),
                      std::back_inserter(out));
  return out;
}

inline bool contains_all_blocks(const IncidenceStructure& big, const IncidenceStructure& small) {
  return std::includes(big.blocks().begin(), big.blocks().end(), small.blocks().begin(), small.blocks().end());
}

/// d with n^d = v, if any (d >= 2).
inline std::optional<int> log_exact(std::size_t v, std::size_t n) {
  if (n < 2) return std::nullopt;
  std::size_t x = n;
  int d = 1;
  while (x < v) {
    x *= n;
    ++d;
  }
  if (x != v || d < 2) return std::nullopt;
  return d;
}

}  // namespace detail

/// Parameters of a partial 2-(n^d, n, 1) design read off its point count and line size.
struct LineDesignShape {
  std::size_t n = 0;
  int d = 0;
  std::size_t v = 0;
  std::size_t replication = 0;  // (n^d - 1)/(n - 1)
};

inline LineDesignShape line_design_shape(const IncidenceStructure& s, std::optional<std::size_t> n = std::nullopt) {
  if (!n) {
    auto k = s.block_size();
    if (!k) throw Error(ErrorCode::HypothesesNotMet, "line size cannot be inferred (no lines or mixed sizes)");
    n = *k;
  }
  auto d = detail::log_exact(s.num_points(), *n);
  if (!d) throw Error(ErrorCode::HypothesesNotMet, "point count is not a power n^d with d >= 2");
  return {*n, *d, s.num_points(), (s.num_points() - 1) / (*n - 1)};
}

/// Largest number of lines through a point P missing a line l (P not on l), with a witness.
struct ParallelLoad {
  std::size_t worst = 0;
  std::size_t line = 0;
  Point point = 0;
};

inline ParallelLoad max_parallels_through_point(const IncidenceStructure& s) {
  std::vector<PointSet> joined;
  joined.reserve(s.num_points());
  for (Point p = 0; p < s.num_points(); ++p) joined.push_back(joined_set(s, p));
  ParallelLoad load;
  for (std::size_t l = 0; l < s.num_blocks(); ++l) {
    const auto& line = s.block_set(l);
    for (Point p = 0; p < s.num_points(); ++p) {
      if (line.test(p)) continue;
      const auto missing = valency(s, p) - joined[p].intersection_count(line);
      if (missing > load.worst) load = {missing, l, p};
    }
  }
  return load;
}

/// Completes a partial 2-(n^d, n, 1) design in which every point but at most one
/// lies on at least r-1 lines and no point off a line has more than r-n lines
/// missing it (r the replication number).
inline CompletionResult complete_low_valency(const IncidenceStructure& s, std::optional<std::size_t> order = std::nullopt) {
  const auto shape = line_design_shape(s, order);
  const auto n = shape.n;
  const auto r = shape.replication;
  const DesignParams params{2, static_cast<int>(shape.v), static_cast<int>(n), 1};
  if (!is_partial_design(s, params))
    throw Error(ErrorCode::HypothesesNotMet, "input is not a partial 2-(n^d,n,1) design");

  CompletionResult out;
  out.method = Method::LowValency;
  auto& cert = out.certificate;
  cert.push_back("partial 2-(" + detail::str(shape.v) + "," + detail::str(n) + ",1) design, d = " +
                 std::to_string(shape.d) + ", replication r = " + detail::str(r));

  const auto load = max_parallels_through_point(s);
  if (load.worst > r - n)
    throw Error(ErrorCode::HypothesesNotMet, "point " + detail::str(load.point) + " has " + detail::str(load.worst) +
                                                 " lines missing line " + detail::str(load.line) + " (limit r-n = " +
                                                 detail::str(r - n) + ")");
  cert.push_back("verified: at most r-n = " + detail::str(r - n) + " lines through a point miss a given line (max " +
                 detail::str(load.worst) + ")");

  std::size_t low = 0;
  for (Point p = 0; p < s.num_points(); ++p)
    if (valency(s, p) + 1 < r) ++low;
  if (low > 1)
    throw Error(ErrorCode::HypothesesNotMet, detail::str(low) + " points lie on fewer than r-1 lines (at most 1 allowed)");
  cert.push_back("verified: " + detail::str(low) + " point(s) on fewer than r-1 lines");

  std::set<Block> added;
  for (Point p = 0; p < s.num_points(); ++p) {
    if (valency(s, p) + 1 != r) continue;
    const auto unjoined = unjoined_set(s, p);
    Block line = unjoined.to_vector();
    // Points unjoined to a point on r-1 lines are pairwise unjoined.
    for (std::size_t i = 0; i < line.size(); ++i) {
      const auto others = joined_set(s, line[i]);
      for (std::size_t j = i + 1; j < line.size(); ++j)
        if (others.test(line[j]))
          throw Error(ErrorCode::ResultNotADesign, "points " + detail::str(line[i]) + " and " + detail::str(line[j]) +
                                                       " unjoined to " + detail::str(p) + " are joined");
    }
    line.push_back(p);
    std::sort(line.begin(), line.end());
    if (line.size() != n)
      throw Error(ErrorCode::ResultNotADesign, "added set at point " + detail::str(p) + " has " +
                                                   detail::str(line.size()) + " points, expected " + detail::str(n));
    added.insert(std::move(line));
  }
  out.added_blocks.assign(added.begin(), added.end());
  out.completed = with_blocks(s, out.added_blocks);
  if (!is_design(out.completed, params))
    throw Error(ErrorCode::ResultNotADesign, "union with the added lines is not a 2-design");
  cert.push_back("added " + detail::str(out.added_blocks.size()) +
                 " line(s) {P} + unjoined(P) over points on r-1 lines; result verified as a 2-design");
  return out;
}

/// A partial affine plane with one new point per parallel class and a line through the new points.
struct ProjectiveExtension {
  IncidenceStructure structure;
  std::size_t order = 0;
  std::vector<Point> class_points;   // class i -> its new point
  std::size_t infinity_line = 0;     // index of the line through the new points
};

inline ProjectiveExtension extend_to_partial_projective(const IncidenceStructure& s) {
  const auto n = require_pap(s);
  const auto pc = classify_parallelism(s);
  if (!pc.is_equivalence) throw Error(ErrorCode::NotEquivalence, "parallelism is not an equivalence relation");
  if (pc.class_count() > n + 1)
    throw Error(ErrorCode::TooManyClasses,
                detail::str(pc.class_count()) + " parallel classes exceed n+1 = " + detail::str(n + 1));

  const auto base = static_cast<Point>(n * n);
  ProjectiveExtension ext;
  ext.order = n;
  std::vector<Block> blocks = s.blocks();
  for (std::size_t c = 0; c < pc.classes.size(); ++c) {
    const auto pt = base + static_cast<Point>(c);
    ext.class_points.push_back(pt);
    for (auto bi : pc.classes[c]) blocks[bi].push_back(pt);
  }
  Block infinity;
  for (std::size_t i = 0; i <= n; ++i) infinity.push_back(base + static_cast<Point>(i));
  blocks.push_back(infinity);
  ext.structure = IncidenceStructure(n * n + n + 1, std::move(blocks));
  ext.infinity_line = *ext.structure.find_block(infinity);
  return ext;
}

/// Removes a line and its points from a projective plane; the remaining points keep their relative order.
inline Reindexed strip_infinity(const IncidenceStructure& plane, std::size_t line_index) {
  plane.check_block(line_index);
  const auto k = plane.block(line_index).size();
  if (k < 3 || !is_design(plane, {2, static_cast<int>(k * k - k + 1), static_cast<int>(k), 1}))
    throw Error(ErrorCode::NotAPlane, "input is not a projective plane");
  const auto& removed = plane.block_set(line_index);
  Reindexed out;
  std::vector<Point> to_local(plane.num_points(), 0);
  for (Point p = 0; p < plane.num_points(); ++p) {
    if (removed.test(p)) continue;
    to_local[p] = static_cast<Point>(out.to_original.size());
    out.to_original.push_back(p);
  }
  std::vector<Block> blocks;
  for (std::size_t i = 0; i < plane.num_blocks(); ++i) {
    if (i == line_index) continue;
    Block b;
    for (auto p : plane.block(i))
      if (!removed.test(p)) b.push_back(to_local[p]);
    blocks.push_back(std::move(b));
  }
  out.structure = IncidenceStructure(out.to_original.size(), std::move(blocks));
  return out;
}

enum class PapRoute { FullPoint, SquareLines, NearSquare, Oracle, Direct };

inline std::string_view to_string(PapRoute r) {
  switch (r) {
    case PapRoute::FullPoint: return "full-point";
    case PapRoute::SquareLines: return "square-lines";
    case PapRoute::NearSquare: return "near-square";
    case PapRoute::Oracle: return "oracle";
    case PapRoute::Direct: return "direct";
  }
  return "unknown";
}

enum class AttemptStatus { Completed, NotCompletable, BudgetExhausted };

struct PapAttempt {
  AttemptStatus status = AttemptStatus::NotCompletable;
  PapRoute route = PapRoute::Oracle;
  bool theorem_backed = false;
  std::optional<CompletionResult> result;
  std::vector<std::string> certificate;
  std::uint64_t nodes = 0;
};

namespace detail {

inline PapAttempt projective_route(const IncidenceStructure& s, std::size_t n, PapAttempt attempt,
                                   const OracleOptions& options) {
  const auto ext = extend_to_partial_projective(s);
  attempt.certificate.push_back("embedded in a partial projective plane of order " + str(n) + " with " +
                                str(ext.structure.num_blocks()) + " pairwise meeting lines");
  OracleOptions first = options;
  first.mode = OracleMode::First;
  const auto outcome = complete_partial_projective_search(ext.structure, n, first);
  attempt.nodes = outcome.nodes;
  if (outcome.budget_exhausted) {
    attempt.status = AttemptStatus::BudgetExhausted;
    attempt.certificate.push_back("projective completion search hit the node budget after " + str(outcome.nodes) +
                                  " nodes");
    return attempt;
  }
  if (!outcome.first_completion) {
    attempt.status = AttemptStatus::NotCompletable;
    attempt.certificate.push_back("projective completion search exhausted, 0 completions (" + str(outcome.nodes) +
                                  " nodes); any affine completion would induce one");
    return attempt;
  }
  const auto& plane = outcome.first_completion->completed;
  const auto line = plane.find_block(ext.structure.block(ext.infinity_line));
  auto stripped = strip_infinity(plane, *line);

  CompletionResult r;
  r.method = Method::ProjectiveEmbed;
  r.completed = std::move(stripped.structure);
  r.added_blocks = block_difference(r.completed, s);
  attempt.certificate.push_back("completed the projective plane (" + str(outcome.nodes) +
                                " search nodes) and removed the added line and its points");
  attempt.result = std::move(r);
  attempt.status = AttemptStatus::Completed;
  return attempt;
}

inline PapAttempt oracle_route(const IncidenceStructure& s, std::size_t n, PapAttempt attempt,
                               const OracleOptions& options) {
  OracleOptions first = options;
  first.mode = OracleMode::First;
  const DesignParams params{2, static_cast<int>(n * n), static_cast<int>(n), 1};
  const auto outcome = oracle_complete(s, params, first);
  attempt.nodes = outcome.nodes;
  if (outcome.budget_exhausted) {
    attempt.status = AttemptStatus::BudgetExhausted;
    attempt.certificate.push_back("oracle hit the node budget after " + str(outcome.nodes) + " nodes");
    return attempt;
  }
  if (!outcome.first_completion) {
    attempt.status = AttemptStatus::NotCompletable;
    attempt.certificate.push_back("oracle exhausted, 0 completions (" + str(outcome.nodes) + " nodes)");
    return attempt;
  }
  attempt.result = *outcome.first_completion;
  attempt.certificate.push_back("oracle found a completion (" + str(outcome.nodes) + " nodes)");
  attempt.status = AttemptStatus::Completed;
  return attempt;
}

}  // namespace detail

/// Runs the completion driver and reports the outcome without throwing for
/// negative results. Throws NotAPap / NotEquivalence for invalid input.
inline PapAttempt attempt_complete_pap(const IncidenceStructure& s, const OracleOptions& options = {}) {
  const auto n = require_pap(s);
  const auto pc = classify_parallelism(s);
  if (!pc.is_equivalence) throw Error(ErrorCode::NotEquivalence, "parallelism is not an equivalence relation");
  const auto b = s.num_blocks();
  const auto k = pc.class_count();
  const auto nn = static_cast<std::int64_t>(n);
  const auto bb = static_cast<std::int64_t>(b);

  PapAttempt attempt;
  auto& cert = attempt.certificate;
  cert.push_back("partial affine plane of order " + detail::str(n) + " with b = " + detail::str(b) +
                 " lines; parallelism is an equivalence relation with " + detail::str(k) + " classes");
  const bool above_g = exceeds(bb, nn, Threshold::GMinusOne);

  std::optional<Point> full;
  for (Point p = 0; p < s.num_points() && !full; ++p)
    if (valency(s, p) == n + 1) full = p;

  if (full) {
    attempt.route = PapRoute::FullPoint;
    if (k != n + 1)
      throw Error(ErrorCode::ResultNotADesign, "point on n+1 lines but " + detail::str(k) + " classes");
    cert.push_back("point " + detail::str(*full) + " lies on n+1 lines; verified exactly n+1 = " + detail::str(k) +
                   " parallel classes");
    attempt.theorem_backed = above_g;
    cert.push_back(std::string("b > g(n)-1: ") + (above_g ? "yes" : "no, completion is search-certified only"));
    attempt = detail::projective_route(s, n, std::move(attempt), options);
  } else if (b == n * n) {
    attempt.route = PapRoute::SquareLines;
    attempt.theorem_backed = true;
    cert.push_back("b = n^2 and no point on n+1 lines, so every point lies on n lines");
    auto r = complete_low_valency(s, n);
    for (auto& line : r.certificate) cert.push_back(line);
    attempt.result = std::move(r);
    attempt.status = AttemptStatus::Completed;
  } else if (b < n * n && static_cast<std::int64_t>((n * n - b) * (n * n - b)) < nn && above_g) {
    attempt.route = PapRoute::NearSquare;
    const auto a = n * n - b;
    cert.push_back("b = n^2 - " + detail::str(a) + " with 1 <= a < min(sqrt n, n^2 - g(n) + 1), no point on n+1 lines");
    if (k <= n + 1) {
      attempt.theorem_backed = true;
      cert.push_back("verified: " + detail::str(k) + " <= n+1 parallel classes");
      attempt = detail::projective_route(s, n, std::move(attempt), options);
    } else {
      cert.push_back("unexpected: " + detail::str(k) + " > n+1 classes in the near-square range; using the oracle");
      attempt = detail::oracle_route(s, n, std::move(attempt), options);
    }
  } else {
    attempt.route = PapRoute::Oracle;
    cert.push_back("no constructive route applies; exhaustive oracle over 2-(" + detail::str(n * n) + "," +
                   detail::str(n) + ",1)");
    attempt = detail::oracle_route(s, n, std::move(attempt), options);
  }

  if (attempt.result) {
    auto& r = *attempt.result;
    const DesignParams params{2, static_cast<int>(n * n), static_cast<int>(n), 1};
    if (!is_design(r.completed, params) || !detail::contains_all_blocks(r.completed, s))
      throw Error(ErrorCode::ResultNotADesign, "completion failed validation");
    r.certificate = attempt.certificate;
    r.certificate.push_back("verified: result is a 2-(" + detail::str(n * n) + "," + detail::str(n) +
                            ",1) design containing every input line; " + detail::str(r.added_blocks.size()) +
                            " line(s) added");
  }
  return attempt;
}

/// Completes a partial affine plane in which parallelism is an equivalence relation.
inline CompletionResult complete_pap(const IncidenceStructure& s, const OracleOptions& options = {}) {
  auto attempt = attempt_complete_pap(s, options);
  switch (attempt.status) {
    case AttemptStatus::Completed: return std::move(*attempt.result);
    case AttemptStatus::BudgetExhausted:
      throw Error(ErrorCode::BudgetExhausted, attempt.certificate.back());
    case AttemptStatus::NotCompletable: break;
  }
  throw Error(ErrorCode::NotCompletable, attempt.certificate.back());
}

/// Completion through the projective embedding only.
inline PapAttempt attempt_complete_projective(const IncidenceStructure& s, const OracleOptions& options = {}) {
  const auto n = require_pap(s);
  PapAttempt attempt;
  attempt.route = PapRoute::Direct;
  attempt = detail::projective_route(s, n, std::move(attempt), options);
  if (attempt.result) attempt.result->certificate = attempt.certificate;
  return attempt;
}

/// The structure obtained by giving each parallel class its own extra point
/// (re-using points on no line first), used for double counting.
struct ClassPointExtension {
  IncidenceStructure structure;
  AffineContext context;
  std::size_t order = 0;
  std::vector<Point> class_points;
};

inline ClassPointExtension class_point_extension(const IncidenceStructure& s) {
  const auto n = require_pap(s);
  const auto pc = classify_parallelism(s);
  if (!pc.is_equivalence) throw Error(ErrorCode::NotEquivalence, "parallelism is not an equivalence relation");
  const auto k = pc.class_count();
  std::vector<Point> empty;
  for (Point p = 0; p < s.num_points(); ++p)
    if (valency(s, p) == 0) empty.push_back(p);
  const auto e = empty.size();
  const auto reused = std::min(e, k);

  // Keep every point except the unused empty ones, then append fresh class points.
  std::vector<bool> drop(s.num_points(), false);
  for (std::size_t i = reused; i < e; ++i) drop[empty[i]] = true;
  std::vector<Point> to_local(s.num_points(), 0);
  Point next = 0;
  for (Point p = 0; p < s.num_points(); ++p)
    if (!drop[p]) to_local[p] = next++;

  ClassPointExtension ext;
  ext.order = n;
  std::vector<Block> blocks;
  std::vector<std::size_t> cls = pc.class_of_block(s.num_blocks());
  for (std::size_t c = 0; c < k; ++c) ext.class_points.push_back(c < reused ? to_local[empty[c]] : next++);
  for (std::size_t i = 0; i < s.num_blocks(); ++i) {
    Block blk;
    for (auto p : s.block(i)) blk.push_back(to_local[p]);
    blk.push_back(ext.class_points[cls[i]]);
    blocks.push_back(std::move(blk));
  }
  ext.structure = IncidenceStructure(next, std::move(blocks));
  ext.context = {static_cast<std::int64_t>(k), static_cast<std::int64_t>(e),
                 static_cast<std::int64_t>(n * n) - static_cast<std::int64_t>(s.num_blocks())};
  return ext;
}

/// In the extremal case k - e = n + 2 with f0 (f0 + 1) = 2n, the points of the
/// class-point extension on n lines carry a structure whose dual is an n-GDD of
/// type (n - f0)^(n + f0 + 2). Reports the groups when that holds.
struct ExtremalGddReport {
  bool applicable = false;
  std::int64_t f0 = 0;
  std::int64_t group_size = 0;
  std::int64_t group_count = 0;
  std::optional<std::vector<std::vector<Point>>> groups;
};

inline ExtremalGddReport extremal_gdd_check(const IncidenceStructure& s) {
  const auto ext = class_point_extension(s);
  const auto n = static_cast<std::int64_t>(ext.order);
  const auto& ctx = ext.context;
  ExtremalGddReport r;
  r.f0 = ctx.f0;
  r.applicable = ctx.k - ctx.e == n + 2 && ctx.f0 >= 0 && ctx.f0 * (ctx.f0 + 1) == 2 * n;
  if (!r.applicable) return r;
  r.group_size = n - ctx.f0;
  r.group_count = n + ctx.f0 + 2;

  const auto& big = ext.structure;
  std::vector<Point> to_local(big.num_points(), 0);
  std::vector<bool> in_w(big.num_points(), false);
  Point next = 0;
  for (Point p = 0; p < big.num_points(); ++p)
    if (static_cast<std::int64_t>(valency(big, p)) == n) {
      in_w[p] = true;
      to_local[p] = next++;
    }
  std::vector<Block> blocks;
  for (const auto& blk : big.blocks()) {
    Block restricted;
    for (auto p : blk)
      if (in_w[p]) restricted.push_back(to_local[p]);
    blocks.push_back(std::move(restricted));
  }
  try {
    const auto g = IncidenceStructure(next, std::move(blocks));
    const auto d = dual(g);
    r.groups = is_group_divisible(d.structure, {static_cast<int>(n), static_cast<int>(r.group_size),
                                                static_cast<int>(r.group_count)});
  } catch (const Error&) {
    r.groups = std::nullopt;
  }
  return r;
}

}  // namespace papc
