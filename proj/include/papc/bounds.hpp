#pragma once

// Line-count thresholds for completing partial projective and affine planes.
//
//   g1(n) = n^2 - 1
//   g2(n) = n^2 - 2 sqrt(n+3) + 6
//   g3(n) = n^2 - n/6
//   g4(n) = n^2 - ((sqrt5 - 1)/2) n + (17/sqrt5) sqrt(n) + 1
//   g(n)  = min(g1, g2, g3, g4),   f(n) > 0 with f (f + 1) = 2n.
//
// Whenever an integer line count b is compared against one of these, the test
// is rewritten as a sign question about a + b*sqrt(d) with integer a, b, d and
// answered in exact integer arithmetic. The few comparisons that involve three
// independent radicals (g4 against g2 or against f) are evaluated with 100
// significant digits and a separation check. Doubles are for display only.
// "More than g(n) - 1" is read as strict exceedance of the real number.

#include <papc/error.hpp>
#include <papc/incidence.hpp>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace papc {

namespace detail {

using BigInt = boost::multiprecision::cpp_int;
using BigFloat = boost::multiprecision::cpp_bin_float_100;

/// Sign of a + b*sqrt(d), d >= 0.
inline int sign_plus_sqrt(const BigInt& a, const BigInt& b, const BigInt& d) {
  auto sgn = [](const BigInt& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); };
  const int sa = sgn(a);
  const int sb = d == 0 ? 0 : sgn(b);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: compare a^2 with b^2 d.
  const BigInt lhs = a * a;
  const BigInt rhs = b * b * d;
  if (lhs == rhs) return 0;
  return lhs > rhs ? sa : sb;
}

inline BigFloat g_value(int which, std::int64_t n) {
  const BigFloat nn = n;
  const BigFloat root5 = boost::multiprecision::sqrt(BigFloat(5));
  switch (which) {
    case 1: return nn * nn - 1;
    case 2: return nn * nn - 2 * boost::multiprecision::sqrt(nn + 3) + 6;
    case 3: return nn * nn - nn / 6;
    default: return nn * nn - (root5 - 1) / 2 * nn + 17 / root5 * boost::multiprecision::sqrt(nn) + 1;
  }
}

inline BigFloat f_value_big(std::int64_t n) {
  return (boost::multiprecision::sqrt(BigFloat(1) + 8 * BigFloat(n)) - 1) / 2;
}

/// Sign of x after checking it is not within 1e-60 of zero.
inline int separated_sign(const BigFloat& x) {
  if (boost::multiprecision::abs(x) < BigFloat("1e-60"))
    throw std::logic_error("algebraic comparison too close to call at 100 digits");
  return x > 0 ? 1 : -1;
}

}  // namespace detail

/// The positive root of f(f+1) = 2n.
inline double f_value(std::int64_t n) { return (std::sqrt(1.0 + 8.0 * static_cast<double>(n)) - 1.0) / 2.0; }

inline double g_value(int which, std::int64_t n) {
  const auto x = static_cast<double>(n);
  switch (which) {
    case 1: return x * x - 1;
    case 2: return x * x - 2 * std::sqrt(x + 3) + 6;
    case 3: return x * x - x / 6;
    case 4: return x * x - (std::sqrt(5.0) - 1) / 2 * x + 17 / std::sqrt(5.0) * std::sqrt(x) + 1;
    default: throw std::invalid_argument("g index must be 1..4");
  }
}

namespace detail {

/// Sign of g_i(n) - g_j(n). Pairs among g1..g3 reduce to a + b sqrt(d) and are
/// exact (g1 = g3 at n = 6); pairs with g4 are never equal and are separated numerically.
inline int compare_g(int i, int j, std::int64_t n) {
  if (i == j) return 0;
  if (i > j) return -compare_g(j, i, n);
  const BigInt nn = n;
  if (i == 1 && j == 2) return sign_plus_sqrt(-7, 2, nn + 3);        // 2 sqrt(n+3) - 7
  if (i == 1 && j == 3) return sign_plus_sqrt(nn - 6, 0, 0);         // (n - 6) / 6
  if (i == 2 && j == 3) return sign_plus_sqrt(nn + 36, -12, nn + 3); // 6 (g2 - g3)
  return separated_sign(g_value(i, n) - g_value(j, n));
}

}  // namespace detail

/// Index in 1..4 of the smallest g_i(n); ties go to the lower index.
inline int which_min(std::int64_t n) {
  int best = 1;
  for (int i = 2; i <= 4; ++i)
    if (detail::compare_g(i, best, n) < 0) best = i;
  return best;
}

enum class Threshold {
  GMinusOne,          // g(n) - 1
  SquareMinusRootN,   // n^2 - sqrt(n)
  SquareMinusF,       // n^2 - f
  MaxGRootN,          // max(g(n) - 1, n^2 - sqrt(n))
  MaxGF,              // max(g(n) - 1, n^2 - f)
};

namespace detail {

inline bool exceeds_g_minus_one(std::int64_t b, std::int64_t n) {
  const BigInt bb = b;
  const BigInt nn = n;
  const BigInt sq = nn * nn;
  // g1: b + 1 > n^2 - 1
  if (bb + 2 > sq) return true;
  // g2: 2 sqrt(n+3) > n^2 + 5 - b
  {
    const BigInt m = sq + 5 - bb;
    if (m < 0 || 4 * (nn + 3) > m * m) return true;
  }
  // g3: 6(b + 1) > 6n^2 - n
  if (6 * (bb + 1) > 6 * sq - nn) return true;
  // g4: sqrt5 (2(b - n^2) - n) + 5n > 34 sqrt(n)
  {
    const BigInt a = 2 * (bb - sq) - nn;
    const BigInt c = 5 * nn;
    if (sign_plus_sqrt(c, a, 5) > 0 && sign_plus_sqrt(c * c + 5 * a * a - 1156 * nn, 2 * a * c, 5) > 0) return true;
  }
  return false;
}

inline bool exceeds_root_n(std::int64_t b, std::int64_t n) {
  const BigInt d = BigInt(n) * n - b;
  return d <= 0 || d * d < n;
}

inline bool exceeds_f(std::int64_t b, std::int64_t n) {
  const BigInt d = BigInt(n) * n - b;
  return d <= 0 || d * (d + 1) < 2 * BigInt(n);
}

}  // namespace detail

/// b > bound(n), decided exactly.
inline bool exceeds(std::int64_t b, std::int64_t n, Threshold bound) {
  if (n < 2) throw Error(ErrorCode::PreconditionViolated, "order must be at least 2");
  switch (bound) {
    case Threshold::GMinusOne: return detail::exceeds_g_minus_one(b, n);
    case Threshold::SquareMinusRootN: return detail::exceeds_root_n(b, n);
    case Threshold::SquareMinusF: return detail::exceeds_f(b, n);
    case Threshold::MaxGRootN: return detail::exceeds_g_minus_one(b, n) && detail::exceeds_root_n(b, n);
    case Threshold::MaxGF: return detail::exceeds_g_minus_one(b, n) && detail::exceeds_f(b, n);
  }
  return false;
}

/// Smallest integer b with b > bound(n).
inline std::int64_t least_exceeding(std::int64_t n, Threshold bound) {
  std::int64_t b = n * n - 4 * n - 64;
  if (b < 0) b = 0;
  while (!exceeds(b, n, bound)) ++b;
  return b;
}

struct RemarkCheck {
  bool root_n_dominates = false;  // max(g-1, n^2 - sqrt n) == n^2 - sqrt n
  bool f_dominates = false;       // max(g-1, n^2 - f) == n^2 - f
};

/// Decides whether the n^2 - sqrt(n) and n^2 - f thresholds dominate g(n) - 1.
inline RemarkCheck remark_check(std::int64_t n) {
  if (n < 2) throw Error(ErrorCode::PreconditionViolated, "order must be at least 2");
  using detail::BigInt;
  const BigInt nn = n;
  RemarkCheck r;

  // g_i - 1 <= n^2 - sqrt(n) for some i.
  {
    bool any = n <= 4;                                                         // g1: sqrt n <= 2
    if (3 * nn - 13 >= 0 && 100 * nn <= (3 * nn - 13) * (3 * nn - 13)) any = true;  // g2
    if (36 * nn <= (nn + 6) * (nn + 6)) any = true;                            // g3
    if (detail::sign_plus_sqrt(30 * nn - 1176, -(10 * nn + 136), 5) >= 0) any = true;  // g4
    r.root_n_dominates = any;
  }
  // g_i - 1 <= n^2 - f, i.e. f <= n^2 - g_i + 1, for some i.
  {
    bool any = n <= 3;                                                                    // g1: f <= 2
    if (4 * (nn + 3) >= 25 && (nn + 16) * (nn + 16) >= 81 * (nn + 3)) any = true;         // g2
    if ((nn + 6) * (nn + 12) >= 72 * nn) any = true;                                      // g3
    if (!any) {
      const auto c = detail::BigFloat(n) * n - detail::g_value(4, n) + 1;
      any = c >= 0 && detail::separated_sign(c * (c + 1) - 2 * detail::BigFloat(n)) >= 0;
    }
    r.f_dominates = any;
  }
  return r;
}

struct BoundReport {
  std::int64_t n = 0;
  std::array<double, 4> g{};  // g1..g4
  int which_min = 1;
  double g_min = 0;
  double f = 0;
  double threshold_root_n = 0;  // max(g - 1, n^2 - sqrt n)
  double threshold_f = 0;       // max(g - 1, n^2 - f)
  // Exact companions of the doubles above.
  std::int64_t f_ceil = 0;                // least integer m with m(m+1) >= 2n
  bool f_is_integer = false;
  std::int64_t least_lines_root_n = 0;    // least b exceeding threshold_root_n
  std::int64_t least_lines_f = 0;         // least b exceeding threshold_f
  std::int64_t least_lines_g = 0;         // least b exceeding g - 1
  RemarkCheck remark;
};

inline BoundReport bound_report(std::int64_t n) {
  if (n < 2) throw Error(ErrorCode::PreconditionViolated, "order must be at least 2");
  BoundReport r;
  r.n = n;
  for (int i = 0; i < 4; ++i) r.g[static_cast<std::size_t>(i)] = g_value(i + 1, n);
  r.which_min = which_min(n);
  r.g_min = r.g[static_cast<std::size_t>(r.which_min - 1)];
  r.f = f_value(n);
  const double sq = static_cast<double>(n) * static_cast<double>(n);
  r.threshold_root_n = std::max(r.g_min - 1, sq - std::sqrt(static_cast<double>(n)));
  r.threshold_f = std::max(r.g_min - 1, sq - r.f);
  std::int64_t m = 0;
  while (m * (m + 1) < 2 * n) ++m;
  r.f_ceil = m;
  r.f_is_integer = m * (m + 1) == 2 * n;
  r.least_lines_root_n = least_exceeding(n, Threshold::MaxGRootN);
  r.least_lines_f = least_exceeding(n, Threshold::MaxGF);
  r.least_lines_g = least_exceeding(n, Threshold::GMinusOne);
  r.remark = remark_check(n);
  return r;
}

/// Integer square-root comparisons: s >= sqrt(n) and s <= sqrt(n) without rounding.
inline bool at_least_sqrt(std::int64_t s, std::int64_t n) { return s >= 0 && s * s >= n; }
inline bool at_most_sqrt(std::int64_t s, std::int64_t n) { return s <= 0 || s * s <= n; }

/// Double-counting statistics of a structure whose blocks have n+1 points and
/// pairwise meet in exactly one point.
struct DegreeCertificate {
  std::int64_t n = 0;
  std::vector<std::int64_t> degrees;  // d_P per point
  std::int64_t b = 0;                 // number of blocks
  std::int64_t sum_d = 0;
  std::int64_t sum_d_d_minus_1 = 0;
  bool incidence_sum_holds = false;  // sum d_P = b (n+1)
  bool pair_sum_holds = false;  // sum d_P (d_P - 1) = b (b-1)

  // Context from the affine structure the extension came from.
  bool has_context = false;
  std::int64_t k = 0;   // parallel classes
  std::int64_t e = 0;   // points of valency 0
  std::int64_t f0 = 0;  // n^2 - (lines of the affine structure)
  std::int64_t excess_lhs = 0;  // 2n + (n - f0)((k - e) - (n + 2))
  std::int64_t excess_rhs = 0;  // f0 (f0 + 1)
  bool excess_applicable = false;  // k - e >= n + 2 and every d_P <= n
  bool excess_holds = false;
};

struct AffineContext {
  std::int64_t k = 0;
  std::int64_t e = 0;
  std::int64_t f0 = 0;
};

inline DegreeCertificate degree_certificate(const IncidenceStructure& s, std::int64_t n,
                                            std::optional<AffineContext> context = std::nullopt) {
  for (const auto& blk : s.blocks())
    if (static_cast<std::int64_t>(blk.size()) != n + 1)
      throw Error(ErrorCode::PreconditionViolated, "every block must have n+1 points");
  for (std::size_t i = 0; i < s.num_blocks(); ++i)
    for (std::size_t j = i + 1; j < s.num_blocks(); ++j)
      if (s.meet_count(i, j) != 1)
        throw Error(ErrorCode::PreconditionViolated,
                    "blocks " + std::to_string(i) + " and " + std::to_string(j) + " do not meet in exactly one point");

  DegreeCertificate c;
  c.n = n;
  c.b = static_cast<std::int64_t>(s.num_blocks());
  std::int64_t max_degree = 0;
  for (Point p = 0; p < s.num_points(); ++p) {
    const auto d = static_cast<std::int64_t>(valency(s, p));
    c.degrees.push_back(d);
    c.sum_d += d;
    c.sum_d_d_minus_1 += d * (d - 1);
    max_degree = std::max(max_degree, d);
  }
  c.incidence_sum_holds = c.sum_d == c.b * (n + 1);
  c.pair_sum_holds = c.sum_d_d_minus_1 == c.b * (c.b - 1);
  if (context) {
    c.has_context = true;
    c.k = context->k;
    c.e = context->e;
    c.f0 = context->f0;
    c.excess_lhs = 2 * n + (n - c.f0) * ((c.k - c.e) - (n + 2));
    c.excess_rhs = c.f0 * (c.f0 + 1);
    c.excess_holds = c.excess_lhs <= c.excess_rhs;
    c.excess_applicable = c.k - c.e >= n + 2 && max_degree <= n;
  }
  return c;
}

}  // namespace papc
