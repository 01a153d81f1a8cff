#pragma once

// Classical substrates: affine and projective planes over GF(q), line designs
// of AG(d,q), Miquelian inversive planes, cyclic transversal designs, and the
// Baer-subplane partial affine plane that cannot be completed.

#include <papc/field.hpp>
#include <papc/incidence.hpp>
#include <papc/parallelism.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <unordered_set>
#include <vector>

namespace papc {

/// AG(2,q): point (x, y) has index x*q + y; lines y = mx + c and x = c.
inline IncidenceStructure affine_plane(int q) {
  const auto f = make_field(q);
  std::vector<Block> lines;
  lines.reserve(static_cast<std::size_t>(q * q + q));
  for (int m = 0; m < q; ++m)
    for (int c = 0; c < q; ++c) {
      Block line;
      for (int x = 0; x < q; ++x) line.push_back(static_cast<Point>(x * q + f.add(f.mul(m, x), c)));
      lines.push_back(std::move(line));
    }
  for (int c = 0; c < q; ++c) {
    Block line;
    for (int y = 0; y < q; ++y) line.push_back(static_cast<Point>(c * q + y));
    lines.push_back(std::move(line));
  }
  return IncidenceStructure(static_cast<std::size_t>(q * q), std::move(lines));
}

namespace detail {

// Vectors of GF(q)^d indexed with coordinate 0 most significant.
inline std::vector<int> unpack(std::size_t index, int q, int d) {
  std::vector<int> v(static_cast<std::size_t>(d));
  for (int i = d - 1; i >= 0; --i) {
    v[static_cast<std::size_t>(i)] = static_cast<int>(index % static_cast<std::size_t>(q));
    index /= static_cast<std::size_t>(q);
  }
  return v;
}

inline std::size_t pack(const std::vector<int>& v, int q) {
  std::size_t index = 0;
  for (auto c : v) index = index * static_cast<std::size_t>(q) + static_cast<std::size_t>(c);
  return index;
}

inline bool is_normalized(const std::vector<int>& v, const FieldTable& f) {
  for (auto c : v) {
    if (c == f.zero) continue;
    return c == f.one;
  }
  return false;
}

inline std::size_t ipow(std::size_t base, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

/// Points of PG(2,q) as normalized coordinate vectors, in index order.
inline std::vector<std::vector<int>> projective_points(const FieldTable& f) {
  std::vector<std::vector<int>> pts;
  for (std::size_t i = 0; i < ipow(static_cast<std::size_t>(f.q), 3); ++i) {
    auto v = unpack(i, f.q, 3);
    if (is_normalized(v, f)) pts.push_back(std::move(v));
  }
  return pts;
}

inline std::vector<Block> projective_lines(const FieldTable& f, const std::vector<std::vector<int>>& pts) {
  std::vector<Block> lines;
  lines.reserve(pts.size());
  for (const auto& l : pts) {
    Block line;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      int dot = f.zero;
      for (std::size_t c = 0; c < 3; ++c) dot = f.add(dot, f.mul(l[c], pts[i][c]));
      if (dot == f.zero) line.push_back(static_cast<Point>(i));
    }
    lines.push_back(std::move(line));
  }
  return lines;
}

}  // namespace detail

/// Lines of AG(d,q): every coset p + <v> of a one-dimensional subspace.
inline IncidenceStructure affine_space_line_design(int q, int d) {
  if (d < 2) throw Error(ErrorCode::PreconditionViolated, "dimension must be at least 2");
  const auto f = make_field(q);
  const auto qs = static_cast<std::size_t>(q);
  if (d > 15 || detail::ipow(qs, d) > (std::size_t{1} << 15))
    throw Error(ErrorCode::TooLarge, "q^d exceeds 2^15");
  const auto v = detail::ipow(qs, d);
  const auto replication = (v - 1) / (qs - 1);
  const auto line_count = v * replication / qs;
  if (line_count * ((v + 63) / 64) > (std::size_t{1} << 24))
    throw Error(ErrorCode::TooLarge, "line design would need more than 2^24 bitset words");

  std::vector<Block> lines;
  lines.reserve(line_count);
  for (std::size_t di = 1; di < v; ++di) {
    const auto dir = detail::unpack(di, q, d);
    if (!detail::is_normalized(dir, f)) continue;
    for (std::size_t pi = 0; pi < v; ++pi) {
      const auto base = detail::unpack(pi, q, d);
      Block line;
      bool base_is_min = true;
      for (int t = 0; t < q && base_is_min; ++t) {
        std::vector<int> pt(static_cast<std::size_t>(d));
        for (std::size_t c = 0; c < pt.size(); ++c) pt[c] = f.add(base[c], f.mul(t, dir[c]));
        const auto idx = detail::pack(pt, q);
        if (idx < pi) base_is_min = false;
        line.push_back(static_cast<Point>(idx));
      }
      if (base_is_min) lines.push_back(std::move(line));
    }
  }
  return IncidenceStructure(v, std::move(lines));
}

/// PG(2,q) with points and lines both indexed by normalized vectors.
inline IncidenceStructure projective_plane(int q) {
  const auto f = make_field(q);
  const auto pts = detail::projective_points(f);
  return IncidenceStructure(pts.size(), detail::projective_lines(f, pts));
}

/// Miquelian inversive plane over GF(q^2): points GF(q^2) plus infinity (index q^2),
/// circles the images of GF(q) plus infinity under z -> (az+b)/(cz+d).
inline IncidenceStructure miquelian_inversive_plane(int q) {
  if (q < 2 || q > 7) throw Error(ErrorCode::UnsupportedOrder, "Miquelian planes are built for q in [2, 7]");
  if (!is_supported_field_order(q) || !is_supported_field_order(q * q))
    throw Error(ErrorCode::UnsupportedOrder, "no field of order " + std::to_string(q * q));
  const auto f = make_field(q * q);
  const int qq = q * q;
  const int inf = qq;
  std::vector<int> base = f.subfield(q);
  base.push_back(inf);

  auto apply = [&](int a, int b, int c, int d, int z) {
    if (z == inf) return c == f.zero ? inf : f.div(a, c);
    const int den = f.add(f.mul(c, z), d);
    if (den == f.zero) return inf;
    return f.div(f.add(f.mul(a, z), b), den);
  };

  std::set<Block> circles;
  // Normalized denominators (c, d): (0, 1) or (1, d).
  std::vector<std::pair<int, int>> dens{{f.zero, f.one}};
  for (int d = 0; d < qq; ++d) dens.emplace_back(f.one, d);
  for (auto [c, d] : dens)
    for (int a = 0; a < qq; ++a)
      for (int b = 0; b < qq; ++b) {
        if (f.sub(f.mul(a, d), f.mul(b, c)) == f.zero) continue;
        Block circle;
        for (auto z : base) circle.push_back(static_cast<Point>(apply(a, b, c, d, z)));
        std::sort(circle.begin(), circle.end());
        circles.insert(std::move(circle));
      }
  return IncidenceStructure(static_cast<std::size_t>(qq + 1), std::vector<Block>(circles.begin(), circles.end()));
}

/// Lines of PG(2,n), n = q^2, tangent to the Baer subplane PG(2,q), restricted
/// to the points off the subplane, plus sqrt(n) isolated points at the end.
inline IncidenceStructure baer_example(int n) {
  const auto root = exact_sqrt(static_cast<std::size_t>(std::max(n, 0)));
  if (n < 4 || !root) throw Error(ErrorCode::NotASquare, std::to_string(n) + " is not the square of an order >= 2");
  const int q = static_cast<int>(*root);
  if (!is_supported_field_order(n) || !is_supported_field_order(q))
    throw Error(ErrorCode::UnsupportedOrder, "no field of order " + std::to_string(n));
  const auto f = make_field(n);
  const auto sub = f.subfield(q);
  const auto pts = detail::projective_points(f);
  const auto lines = detail::projective_lines(f, pts);

  std::vector<bool> in_baer(pts.size(), false);
  for (std::size_t i = 0; i < pts.size(); ++i)
    in_baer[i] = std::all_of(pts[i].begin(), pts[i].end(),
                             [&](int c) { return std::find(sub.begin(), sub.end(), c) != sub.end(); });

  std::vector<Point> remap(pts.size(), 0);
  Point next = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (!in_baer[i]) remap[i] = next++;

  std::vector<Block> tangents;
  for (const auto& line : lines) {
    const auto hits = std::count_if(line.begin(), line.end(), [&](Point p) { return in_baer[p]; });
    if (hits != 1) continue;
    Block b;
    for (auto p : line)
      if (!in_baer[p]) b.push_back(remap[p]);
    tangents.push_back(std::move(b));
  }
  return IncidenceStructure(static_cast<std::size_t>(next) + static_cast<std::size_t>(q), std::move(tangents));
}

/// TD(3,m) from the cyclic Latin square: group g holds points g*m .. g*m + m-1.
inline IncidenceStructure transversal_design(int m) {
  if (m < 2) throw Error(ErrorCode::PreconditionViolated, "group size must be at least 2");
  const auto um = static_cast<Point>(m);
  std::vector<Block> blocks;
  for (Point i = 0; i < um; ++i)
    for (Point j = 0; j < um; ++j) blocks.push_back({i, um + j, 2 * um + (i + j) % um});
  return IncidenceStructure(3 * static_cast<std::size_t>(m), std::move(blocks));
}

/// TD(k,m); only k = 3 is built.
inline IncidenceStructure transversal_design(int k, int m) {
  if (k != 3) throw Error(ErrorCode::PreconditionViolated, "only transversal designs with 3 groups are supported");
  return transversal_design(m);
}

inline IncidenceStructure delete_blocks(const IncidenceStructure& s, const std::vector<std::size_t>& indices) {
  std::vector<bool> drop(s.num_blocks(), false);
  for (auto i : indices) {
    s.check_block(i);
    drop[i] = true;
  }
  std::vector<Block> kept;
  for (std::size_t i = 0; i < s.num_blocks(); ++i)
    if (!drop[i]) kept.push_back(s.block(i));
  return IncidenceStructure(s.num_points(), std::move(kept));
}

inline constexpr int kRandomDeletionRetries = 10'000;

/// Deletes `count` blocks chosen by a seeded shuffle. With `keep_equivalence`,
/// draws again until parallelism on the remainder is an equivalence relation.
inline IncidenceStructure random_deletion(const IncidenceStructure& s, std::size_t count, std::uint64_t seed,
                                          bool keep_equivalence) {
  if (count > s.num_blocks())
    throw Error(ErrorCode::PreconditionViolated,
                "cannot delete " + std::to_string(count) + " of " + std::to_string(s.num_blocks()) + " blocks");
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> order(s.num_blocks());
  for (int attempt = 0; attempt < kRandomDeletionRetries; ++attempt) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    auto out = delete_blocks(s, std::vector<std::size_t>(order.begin(), order.begin() + static_cast<long>(count)));
    if (!keep_equivalence || classify_parallelism(out).is_equivalence) return out;
  }
  throw Error(ErrorCode::RetriesExhausted, "no equivalence-preserving deletion found in " +
                                               std::to_string(kRandomDeletionRetries) + " attempts");
}

}  // namespace papc
