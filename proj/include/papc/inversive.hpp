#pragma once

// Partial 3-(n^d+1, n+1, 1) designs: derived structures, their completions,
// added lines and simple points, and the gluing of added lines into circles.
//
// Points of a derived structure at P use local indices (point q > P becomes
// q - 1). DerivedCompletion also keeps added lines and simple points in the
// indices of the 3-design so that different base points can be compared.

#include <papc/completion.hpp>
#include <papc/incidence.hpp>
#include <papc/oracle.hpp>
#include <papc/parallelism.hpp>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

namespace papc {

struct InversiveShape {
  std::size_t n = 0;
  int d = 0;
  std::size_t v = 0;             // n^d + 1
  std::size_t replication = 0;   // lines per point in a derived 2-design
};

inline InversiveShape inversive_shape(const IncidenceStructure& s, std::optional<std::size_t> order = std::nullopt) {
  if (!order) {
    const auto k = s.block_size();
    if (!k || *k < 3) throw Error(ErrorCode::InvalidInput, "circle size cannot be inferred");
    order = *k - 1;
  }
  const auto d = detail::log_exact(s.num_points() - 1, *order);
  if (s.num_points() < 2 || !d) throw Error(ErrorCode::InvalidInput, "point count is not n^d + 1 with d >= 2");
  const DesignParams params{3, static_cast<int>(s.num_points()), static_cast<int>(*order + 1), 1};
  if (!is_partial_design(s, params)) throw Error(ErrorCode::InvalidInput, "not a partial 3-(n^d+1,n+1,1) design");
  return {*order, *d, s.num_points(), (s.num_points() - 2) / (*order - 1)};
}

struct DerivedCompletion {
  Point base_point = 0;
  Reindexed derived;                 // I_P with its map back to the 3-design
  IncidenceStructure completed;      // I'_P, local indices
  std::vector<Block> added_lines;    // I'_P minus I_P, local indices
  std::vector<Block> added_lines_global;
  std::vector<Point> simple_points;  // global indices
  std::vector<std::size_t> added_through;  // global index -> added lines through it (0 at the base point)
  Method method = Method::OracleSearch;
  std::optional<bool> unique;        // empty when not certified
  std::vector<std::string> certificate;

  [[nodiscard]] std::size_t max_added_through() const {
    return added_through.empty() ? 0 : *std::max_element(added_through.begin(), added_through.end());
  }
  [[nodiscard]] bool is_added_line(const Block& global) const {
    return std::binary_search(added_lines_global.begin(), added_lines_global.end(), global);
  }
  [[nodiscard]] bool is_simple(Point global) const {
    return global < added_through.size() && global != base_point && added_through[global] == 1;
  }
  /// The line of I'_P through two points (global indices), if any.
  [[nodiscard]] std::optional<Block> line_through(Point a, Point b) const {
    const auto la = derived.to_local(a);
    const auto lb = derived.to_local(b);
    if (!la || !lb) return std::nullopt;
    for (auto bi : completed.blocks_through(*la))
      if (completed.block_set(bi).test(*lb)) {
        Block out;
        for (auto p : completed.block(bi)) out.push_back(derived.to_original[p]);
        return out;
      }
    return std::nullopt;
  }
};

struct InversiveOptions {
  OracleOptions oracle;
  /// Uniqueness is certified by exhaustive count only up to this many derived points.
  std::size_t uniqueness_cap = 81;
  bool certify_uniqueness = true;
  /// Worker threads across base points.
  unsigned threads = 1;
};

namespace detail {

inline DerivedCompletion complete_derived(const IncidenceStructure& s, const InversiveShape& shape, Point p,
                                          const InversiveOptions& options) {
  DerivedCompletion dc;
  dc.base_point = p;
  dc.derived = derived_at(s, p);
  const auto& local = dc.derived.structure;
  const auto n = shape.n;
  const DesignParams params{2, static_cast<int>(shape.v - 1), static_cast<int>(n), 1};

  std::optional<CompletionResult> result;
  auto use_oracle = [&] {
    OracleOptions first = options.oracle;
    first.mode = OracleMode::First;
    const auto outcome = oracle_complete(local, params, first);
    if (outcome.budget_exhausted)
      throw Error(ErrorCode::BudgetExhausted, "derived structure at point " + str(p) + ": node budget hit");
    if (!outcome.first_completion)
      throw Error(ErrorCode::DerivedNotCompletable,
                  "derived structure at point " + str(p) + " has no completion (oracle exhausted)");
    result = *outcome.first_completion;
  };

  if (shape.d == 2 && local.num_blocks() > 0 && classify_parallelism(local).is_equivalence) {
    auto attempt = attempt_complete_pap(local, options.oracle);
    if (attempt.status == AttemptStatus::BudgetExhausted)
      throw Error(ErrorCode::BudgetExhausted, "derived structure at point " + str(p) + ": node budget hit");
    if (attempt.status == AttemptStatus::NotCompletable)
      throw Error(ErrorCode::DerivedNotCompletable,
                  "derived structure at point " + str(p) + ": " + attempt.certificate.back());
    result = std::move(attempt.result);
  } else if (shape.d > 2) {
    try {
      result = complete_low_valency(local, n);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::HypothesesNotMet) throw;
      use_oracle();
    }
  } else {
    use_oracle();
  }

  dc.completed = std::move(result->completed);
  dc.added_lines = std::move(result->added_blocks);
  dc.method = result->method;
  dc.certificate = std::move(result->certificate);

  dc.added_through.assign(shape.v, 0);
  for (const auto& line : dc.added_lines) {
    Block global;
    for (auto q : line) {
      global.push_back(dc.derived.to_original[q]);
      ++dc.added_through[dc.derived.to_original[q]];
    }
    dc.added_lines_global.push_back(std::move(global));
  }
  std::sort(dc.added_lines_global.begin(), dc.added_lines_global.end());
  for (Point q = 0; q < shape.v; ++q)
    if (q != p && dc.added_through[q] == 1) dc.simple_points.push_back(q);

  // Simple points are exactly the points on r-1 lines of I_P.
  for (Point q = 0; q < shape.v; ++q) {
    if (q == p) continue;
    const auto lv = valency(local, *dc.derived.to_local(q));
    if ((lv + 1 == shape.replication) != (dc.added_through[q] == 1))
      throw Error(ErrorCode::ResultNotADesign, "simple-point count mismatch at " + str(q) + " in I_" + str(p));
  }

  if (options.certify_uniqueness && local.num_points() <= options.uniqueness_cap) {
    OracleOptions count = options.oracle;
    count.mode = OracleMode::CountAll;
    count.limit = 2;
    count.threads = 1;
    const auto outcome = oracle_complete(local, params, count);
    if (!outcome.budget_exhausted) dc.unique = outcome.completions_found == 1;
    dc.certificate.push_back(dc.unique ? (*dc.unique ? "uniqueness: exactly one completion (exhaustive count)"
                                                     : "uniqueness: more than one completion exists")
                                       : "uniqueness: not certified (node budget)");
  } else {
    dc.certificate.push_back("uniqueness: assumed, not certified at this size");
  }
  return dc;
}

}  // namespace detail

/// Completes the derived structure at every point.
inline std::vector<DerivedCompletion> derive_and_complete_all(const IncidenceStructure& s,
                                                              const InversiveOptions& options = {}) {
  const auto shape = inversive_shape(s);
  std::vector<DerivedCompletion> out(shape.v);
  if (options.threads <= 1) {
    for (Point p = 0; p < shape.v; ++p) out[p] = detail::complete_derived(s, shape, p, options);
    return out;
  }
  std::vector<std::optional<Error>> errors(shape.v);
  std::atomic<Point> next{0};
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < options.threads; ++w)
      pool.emplace_back([&] {
        for (auto p = next.fetch_add(1); p < shape.v; p = next.fetch_add(1)) {
          try {
            out[p] = detail::complete_derived(s, shape, p, options);
          } catch (const Error& e) {
            errors[p] = e;
          }
        }
      });
  }
  for (auto& e : errors)
    if (e) throw *e;
  return out;
}

/// Every added line has at least sqrt(n) simple points and no point lies on more than sqrt(n) added lines.
inline bool check_condition_i(const DerivedCompletion& dc, std::size_t n) {
  const auto nn = static_cast<std::int64_t>(n);
  for (const auto& line : dc.added_lines_global) {
    const auto simple = std::count_if(line.begin(), line.end(), [&](Point q) { return dc.is_simple(q); });
    if (!at_least_sqrt(static_cast<std::int64_t>(simple), nn)) return false;
  }
  for (auto c : dc.added_through)
    if (!at_most_sqrt(static_cast<std::int64_t>(c), nn)) return false;
  return true;
}

/// At most one point lies on more than one added line.
inline bool check_condition_ii(const DerivedCompletion& dc) {
  return std::count_if(dc.added_through.begin(), dc.added_through.end(), [](std::size_t c) { return c > 1; }) <= 1;
}

struct MirrorReport {
  Point base_point = 0;
  Point simple_point = 0;
  Block line;                // added line of I'_P, global indices
  Block mirrored_line;       // {P} + (line - {Q})
  bool mirrored_is_added = false;
  bool base_is_simple = false;
  bool clause_i = false;
  bool clause_ii = false;
  std::vector<std::string> failures;
};

/// Checks both clauses for the added line `line` of I'_P through the simple point Q.
inline MirrorReport mirror_verify(const std::vector<DerivedCompletion>& all, Point p, const Block& line, Point q) {
  if (p >= all.size() || q >= all.size()) throw Error(ErrorCode::InvalidWitness, "point index out of range");
  const auto& dp = all[p];
  Block sorted = line;
  std::sort(sorted.begin(), sorted.end());
  if (!dp.is_added_line(sorted)) throw Error(ErrorCode::InvalidWitness, "not an added line of the derived structure");
  if (!std::binary_search(sorted.begin(), sorted.end(), q))
    throw Error(ErrorCode::InvalidWitness, "point " + std::to_string(q) + " is not on the line");
  if (!dp.is_simple(q)) throw Error(ErrorCode::InvalidWitness, "point " + std::to_string(q) + " is not simple");

  MirrorReport r;
  r.base_point = p;
  r.simple_point = q;
  r.line = sorted;
  for (auto x : sorted)
    if (x != q) r.mirrored_line.push_back(x);
  r.mirrored_line.push_back(p);
  std::sort(r.mirrored_line.begin(), r.mirrored_line.end());

  const auto& dq = all[q];
  r.mirrored_is_added = dq.is_added_line(r.mirrored_line);
  r.base_is_simple = dq.is_simple(p);
  r.clause_i = r.mirrored_is_added && r.base_is_simple;
  if (!r.mirrored_is_added) r.failures.push_back("(i) mirrored line is not added at " + std::to_string(q));
  if (!r.base_is_simple) r.failures.push_back("(i) base point is not simple at " + std::to_string(q));

  r.clause_ii = true;
  for (auto rr : sorted) {
    if (rr == q) continue;
    const auto& dr = all[rr];
    for (auto t : sorted) {
      if (t == q || t == rr) continue;
      const auto joining = dr.line_through(q, t);
      if (!joining || !dr.is_added_line(*joining)) {
        r.clause_ii = false;
        r.failures.push_back("(ii) " + std::to_string(q) + " and " + std::to_string(t) +
                             " not joined by an added line at " + std::to_string(rr));
      }
    }
  }
  return r;
}

/// Every (P, added line, simple point) triple of the derived completions.
struct MirrorWitness {
  Point base_point;
  Block line;
  Point simple_point;
};

inline std::vector<MirrorWitness> mirror_witnesses(const std::vector<DerivedCompletion>& all) {
  std::vector<MirrorWitness> out;
  for (const auto& dc : all)
    for (const auto& line : dc.added_lines_global)
      for (auto q : line)
        if (dc.is_simple(q)) out.push_back({dc.base_point, line, q});
  return out;
}

namespace detail {

inline std::string block_text(const Block& b) {
  std::string s = "{";
  for (std::size_t i = 0; i < b.size(); ++i) s += (i ? " " : "") + std::to_string(b[i]);
  return s + "}";
}

inline CompletionResult glue(const IncidenceStructure& s, const InversiveShape& shape,
                             const std::vector<DerivedCompletion>& all, std::vector<std::string> cert) {
  for (const auto& dc : all) {
    const bool ci = check_condition_i(dc, shape.n);
    const bool cii = check_condition_ii(dc);
    if (!ci && !cii)
      throw Error(ErrorCode::ConditionsNotMet, "neither condition holds in the completed derived structure at point " +
                                                   std::to_string(dc.base_point));
  }
  std::set<Block> circles;
  for (const auto& dc : all)
    for (const auto& line : dc.added_lines_global) {
      Block c = line;
      c.push_back(dc.base_point);
      std::sort(c.begin(), c.end());
      circles.insert(std::move(c));
    }
  // Each added circle must be seen as an added line from each of its points.
  for (const auto& c : circles)
    for (auto q : c) {
      Block rest;
      for (auto x : c)
        if (x != q) rest.push_back(x);
      if (!all[q].is_added_line(rest))
        throw Error(ErrorCode::GlueInconsistent,
                    "added circle " + block_text(c) + " is not an added line at point " + std::to_string(q));
    }
  CompletionResult r;
  r.method = Method::InversiveGlue;
  r.added_blocks.assign(circles.begin(), circles.end());
  r.completed = with_blocks(s, r.added_blocks);
  const DesignParams params{3, static_cast<int>(shape.v), static_cast<int>(shape.n + 1), 1};
  if (!is_design(r.completed, params))
    throw Error(ErrorCode::ResultNotADesign, "glued structure is not a 3-design");
  std::size_t certified = 0;
  for (const auto& dc : all)
    if (dc.unique.value_or(false)) ++certified;
  cert.push_back("derived completions: " + std::to_string(certified) + " of " + std::to_string(all.size()) +
                 " certified unique");
  cert.push_back("every added circle re-derived from each of its points");
  cert.push_back("added " + std::to_string(r.added_blocks.size()) + " circle(s); result verified as a 3-(" +
                 std::to_string(shape.v) + "," + std::to_string(shape.n + 1) + ",1) design");
  r.certificate = std::move(cert);
  return r;
}

}  // namespace detail

inline CompletionResult glue_completion(const IncidenceStructure& s, const InversiveOptions& options = {}) {
  const auto shape = inversive_shape(s);
  const auto all = derive_and_complete_all(s, options);
  std::vector<std::string> cert{"partial 3-(" + std::to_string(shape.v) + "," + std::to_string(shape.n + 1) +
                                ",1) design with " + std::to_string(s.num_blocks()) + " circles"};
  for (const auto& dc : all) {
    const bool ci = check_condition_i(dc, shape.n);
    const bool cii = check_condition_ii(dc);
    cert.push_back("point " + std::to_string(dc.base_point) + ": " + std::to_string(dc.added_lines.size()) +
                   " added line(s), condition " + (ci && cii ? "(i) and (ii)" : ci ? "(i)" : cii ? "(ii)" : "none"));
  }
  return detail::glue(s, shape, all, std::move(cert));
}

/// Which hypothesis on the derived structure at a point of a partial inversive plane holds.
enum class RouterClause { ManyCircles, FewLowPoints, EmbeddingCriteria };

inline std::string_view to_string(RouterClause c) {
  switch (c) {
    case RouterClause::ManyCircles: return "(i)";
    case RouterClause::FewLowPoints: return "(ii)";
    case RouterClause::EmbeddingCriteria: return "(iii)";
  }
  return "?";
}

/// Known sufficient conditions for completing a PAP, parallelism aside.
inline bool embedding_criteria_hold(const IncidenceStructure& pap, std::size_t n) {
  const auto nn = static_cast<std::int64_t>(n);
  const auto b = static_cast<std::int64_t>(pap.num_blocks());
  const auto e = nn * nn + nn - b;
  if (e == 1 && n >= 2) return true;
  if (e == 2 && n >= 4) return true;
  // e < sqrt(n) + 1 and some point on n + 1 - e lines.
  if (e >= 1 && (e - 1) * (e - 1) < nn) {
    for (Point p = 0; p < pap.num_points(); ++p)
      if (static_cast<std::int64_t>(valency(pap, p)) == nn + 1 - e) return true;
  }
  // e < sqrt(n) and some line contains only points on n + 1 lines.
  if (e >= 1 && e * e < nn) {
    for (const auto& line : pap.blocks())
      if (std::all_of(line.begin(), line.end(), [&](Point p) { return valency(pap, p) == n + 1; })) return true;
  }
  return e <= 0;
}

inline std::optional<RouterClause> router_clause(const IncidenceStructure& derived, std::size_t n) {
  const auto nn = static_cast<std::int64_t>(n);
  const auto b = static_cast<std::int64_t>(derived.num_blocks());
  const bool equivalence = classify_parallelism(derived).is_equivalence;
  // b >= n^2 + n - sqrt(n), i.e. n^2 + n - b <= sqrt(n).
  if (equivalence && at_most_sqrt(nn * nn + nn - b, nn)) return RouterClause::ManyCircles;
  std::size_t low = 0;
  for (Point p = 0; p < derived.num_points(); ++p)
    if (valency(derived, p) < n) ++low;
  if (equivalence && low <= 1) return RouterClause::FewLowPoints;
  if (embedding_criteria_hold(derived, n)) return RouterClause::EmbeddingCriteria;
  return std::nullopt;
}

/// Completion of a partial inversive plane, checking one of the three
/// per-point hypotheses before completing and gluing.
inline CompletionResult router_completion(const IncidenceStructure& s, const InversiveOptions& options = {}) {
  const auto shape = inversive_shape(s);
  if (shape.d != 2) throw Error(ErrorCode::PreconditionViolated, "router applies to partial inversive planes only");
  std::vector<std::string> cert{"partial inversive plane of order " + std::to_string(shape.n) + " with " +
                                std::to_string(s.num_blocks()) + " circles"};
  for (Point p = 0; p < shape.v; ++p) {
    const auto derived = derived_at(s, p);
    const auto clause = router_clause(derived.structure, shape.n);
    if (!clause)
      throw Error(ErrorCode::NoClauseSatisfied, "no clause holds at point " + std::to_string(p) + " (" +
                                                    std::to_string(derived.structure.num_blocks()) + " circles)");
    cert.push_back("point " + std::to_string(p) + ": clause " + std::string(to_string(*clause)) + ", " +
                   std::to_string(derived.structure.num_blocks()) + " circles");
  }
  const auto all = derive_and_complete_all(s, options);
  return detail::glue(s, shape, all, std::move(cert));
}

/// The clause recorded at each point by the router, without completing.
inline std::vector<std::optional<RouterClause>> router_clauses(const IncidenceStructure& s) {
  const auto shape = inversive_shape(s);
  std::vector<std::optional<RouterClause>> out;
  for (Point p = 0; p < shape.v; ++p) out.push_back(router_clause(derived_at(s, p).structure, shape.n));
  return out;
}

}  // namespace papc
