#pragma once

// Lookup-table arithmetic for GF(q), q a prime power up to 128.
//
// Element x in [0, q) encodes the polynomial sum_i d_i X^i where d_i are the
// base-p digits of x (d_0 least significant). Extension fields are reduced
// modulo a fixed monic irreducible polynomial from the table below.

#include <papc/error.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace papc {

struct FieldTable {
  int q = 0;
  int p = 0;  // characteristic
  int m = 0;  // degree over GF(p)
  int zero = 0;
  int one = 1;
  std::vector<std::uint8_t> add_table;  // q*q
  std::vector<std::uint8_t> mul_table;  // q*q
  std::vector<std::uint8_t> neg_table;
  std::vector<std::uint8_t> inv_table;  // inv_table[0] is unused (0)

  [[nodiscard]] int add(int a, int b) const { return add_table[static_cast<std::size_t>(a * q + b)]; }
  [[nodiscard]] int mul(int a, int b) const { return mul_table[static_cast<std::size_t>(a * q + b)]; }
  [[nodiscard]] int neg(int a) const { return neg_table[static_cast<std::size_t>(a)]; }
  [[nodiscard]] int sub(int a, int b) const { return add(a, neg(b)); }
  [[nodiscard]] int inv(int a) const {
    if (a == zero) throw Error(ErrorCode::InvalidInput, "zero has no inverse");
    return inv_table[static_cast<std::size_t>(a)];
  }
  [[nodiscard]] int div(int a, int b) const { return mul(a, inv(b)); }
  [[nodiscard]] int pow(int a, int e) const {
    int r = one;
    for (int i = 0; i < e; ++i) r = mul(r, a);
    return r;
  }

  /// Elements of the subfield of order s (s^j = q for some j): the roots of x^s = x.
  [[nodiscard]] std::vector<int> subfield(int s) const {
    std::vector<int> out;
    for (int x = 0; x < q; ++x)
      if (pow(x, s) == x) out.push_back(x);
    return out;
  }
};

namespace detail {

struct FieldSpec {
  int q;
  int p;
  int m;
  // Coefficients c_0..c_{m-1} of the monic modulus X^m + c_{m-1} X^{m-1} + ... + c_0.
  std::array<int, 8> low;
};

// Monic irreducible moduli, one per supported order.
inline constexpr std::array<FieldSpec, 18> kFieldSpecs{{
    {2, 2, 1, {0}},
    {3, 3, 1, {0}},
    {4, 2, 2, {1, 1}},                    // X^2 + X + 1
    {5, 5, 1, {0}},
    {7, 7, 1, {0}},
    {8, 2, 3, {1, 1, 0}},                 // X^3 + X + 1
    {9, 3, 2, {1, 0}},                    // X^2 + 1
    {11, 11, 1, {0}},
    {13, 13, 1, {0}},
    {16, 2, 4, {1, 1, 0, 0}},             // X^4 + X + 1
    {25, 5, 2, {2, 4}},                   // X^2 + 4X + 2
    {27, 3, 3, {1, 2, 0}},                // X^3 + 2X + 1
    {32, 2, 5, {1, 0, 1, 0, 0}},          // X^5 + X^2 + 1
    {49, 7, 2, {3, 6}},                   // X^2 + 6X + 3
    {64, 2, 6, {1, 1, 0, 0, 0, 0}},       // X^6 + X + 1
    {81, 3, 4, {2, 0, 0, 2}},             // X^4 + 2X^3 + 2
    {121, 11, 2, {2, 7}},                 // X^2 + 7X + 2
    {128, 2, 7, {1, 1, 0, 0, 0, 0, 0}},   // X^7 + X + 1
}};

inline std::vector<int> digits(int x, int p, int m) {
  std::vector<int> d(static_cast<std::size_t>(m));
  for (auto& c : d) {
    c = x % p;
    x /= p;
  }
  return d;
}

inline int from_digits(const std::vector<int>& d, int p) {
  int x = 0;
  for (auto it = d.rbegin(); it != d.rend(); ++it) x = x * p + *it;
  return x;
}

inline bool check_field_axioms(const FieldTable& f, bool exhaustive) {
  const int q = f.q;
  const int step = exhaustive ? 1 : std::max(1, q / 16);
  for (int a = 0; a < q; ++a) {
    if (f.add(a, f.zero) != a || f.mul(a, f.one) != a) return false;
    if (f.add(a, f.neg(a)) != f.zero) return false;
    if (a != f.zero && f.mul(a, f.inv(a)) != f.one) return false;
    for (int b = 0; b < q; ++b) {
      if (f.add(a, b) != f.add(b, a) || f.mul(a, b) != f.mul(b, a)) return false;
      if (a != f.zero && b != f.zero && f.mul(a, b) == f.zero) return false;
    }
  }
  for (int a = 0; a < q; a += step)
    for (int b = 0; b < q; b += step)
      for (int c = 0; c < q; c += step) {
        if (f.add(f.add(a, b), c) != f.add(a, f.add(b, c))) return false;
        if (f.mul(f.mul(a, b), c) != f.mul(a, f.mul(b, c))) return false;
        if (f.mul(a, f.add(b, c)) != f.add(f.mul(a, b), f.mul(a, c))) return false;
      }
  return true;
}

}  // namespace detail

inline bool is_supported_field_order(int q) {
  for (const auto& s : detail::kFieldSpecs)
    if (s.q == q) return true;
  return false;
}

/// Builds and validates the tables for GF(q). Axioms are checked on every
/// triple for q <= 32 and on a strided sample above that.
inline FieldTable make_field(int q) {
  const detail::FieldSpec* spec = nullptr;
  for (const auto& s : detail::kFieldSpecs)
    if (s.q == q) spec = &s;
  if (!spec) throw Error(ErrorCode::UnsupportedOrder, "no field of order " + std::to_string(q) + " available");

  FieldTable f;
  f.q = q;
  f.p = spec->p;
  f.m = spec->m;
  const int p = f.p;
  const int m = f.m;
  const auto qq = static_cast<std::size_t>(q) * static_cast<std::size_t>(q);
  f.add_table.resize(qq);
  f.mul_table.resize(qq);
  f.neg_table.resize(static_cast<std::size_t>(q));
  f.inv_table.assign(static_cast<std::size_t>(q), 0);

  for (int a = 0; a < q; ++a) {
    const auto da = detail::digits(a, p, m);
    std::vector<int> dn(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) dn[static_cast<std::size_t>(i)] = (p - da[static_cast<std::size_t>(i)]) % p;
    f.neg_table[static_cast<std::size_t>(a)] = static_cast<std::uint8_t>(detail::from_digits(dn, p));
    for (int b = 0; b < q; ++b) {
      const auto db = detail::digits(b, p, m);
      std::vector<int> sum(static_cast<std::size_t>(m));
      for (int i = 0; i < m; ++i)
        sum[static_cast<std::size_t>(i)] = (da[static_cast<std::size_t>(i)] + db[static_cast<std::size_t>(i)]) % p;

      // Schoolbook product, then reduce X^j (j >= m) using X^m = -(c_{m-1} X^{m-1} + ... + c_0).
      std::vector<int> prod(static_cast<std::size_t>(2 * m - 1), 0);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          prod[static_cast<std::size_t>(i + j)] =
              (prod[static_cast<std::size_t>(i + j)] + da[static_cast<std::size_t>(i)] * db[static_cast<std::size_t>(j)]) % p;
      for (int j = 2 * m - 2; j >= m; --j) {
        const int c = prod[static_cast<std::size_t>(j)];
        if (c == 0) continue;
        prod[static_cast<std::size_t>(j)] = 0;
        for (int i = 0; i < m; ++i) {
          auto& slot = prod[static_cast<std::size_t>(j - m + i)];
          slot = ((slot - c * spec->low[static_cast<std::size_t>(i)]) % p + p) % p;
        }
      }
      prod.resize(static_cast<std::size_t>(m));
      const auto idx = static_cast<std::size_t>(a * q + b);
      f.add_table[idx] = static_cast<std::uint8_t>(detail::from_digits(sum, p));
      f.mul_table[idx] = static_cast<std::uint8_t>(detail::from_digits(prod, p));
    }
  }
  for (int a = 1; a < q; ++a)
    for (int b = 1; b < q; ++b)
      if (f.mul(a, b) == f.one) f.inv_table[static_cast<std::size_t>(a)] = static_cast<std::uint8_t>(b);

  if (!detail::check_field_axioms(f, q <= 32))
    throw Error(ErrorCode::UnsupportedOrder, "modulus for order " + std::to_string(q) + " does not give a field");
  return f;
}

}  // namespace papc
