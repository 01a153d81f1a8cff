#pragma once

// Text format for incidence structures:
//
//   points N
//   blocks M
//   <M lines, each the ascending point indices of one block>
//
// Canonical files list blocks in lexicographic order and end every line with LF.

#include <papc/error.hpp>
#include <papc/incidence.hpp>

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace papc {

struct ParseResult {
  IncidenceStructure structure;
  bool canonical = true;
  std::vector<std::string> warnings;
};

namespace detail {

[[noreturn]] inline void parse_fail(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

inline std::vector<std::string_view> split_words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && s[i] == ' ') ++i;
    const auto start = i;
    while (i < s.size() && s[i] != ' ') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

inline std::uint64_t parse_number(std::string_view word, std::size_t line) {
  std::uint64_t x = 0;
  const auto* end = word.data() + word.size();
  auto [ptr, ec] = std::from_chars(word.data(), end, x);
  if (ec != std::errc() || ptr != end) parse_fail(line, "expected a non-negative integer, got '" + std::string(word) + "'");
  return x;
}

inline std::uint64_t parse_header(std::string_view text, std::string_view key, std::size_t line) {
  const auto words = split_words(text);
  if (words.size() != 2 || words[0] != key) parse_fail(line, "expected '" + std::string(key) + " <count>'");
  return parse_number(words[1], line);
}

}  // namespace detail

/// Parses the text format. Non-canonical but valid input is canonicalized with a
/// warning, or rejected with NonCanonicalInput when `strict` is set.
inline ParseResult parse_incidence(std::string_view text, bool strict = false) {
  std::vector<std::string_view> lines;
  ParseResult out;
  bool crlf = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      out.canonical = false;
      out.warnings.push_back("missing final newline");
      nl = text.size();
    }
    auto line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') {
      line.remove_suffix(1);
      crlf = true;
    }
    lines.push_back(line);
    pos = nl + 1;
  }
  if (crlf) {
    out.canonical = false;
    out.warnings.push_back("CRLF line endings");
  }
  if (lines.size() < 2) detail::parse_fail(lines.size() + 1, "missing header");
  const auto points = detail::parse_header(lines[0], "points", 1);
  const auto blocks = detail::parse_header(lines[1], "blocks", 2);
  if (points > (std::uint64_t{1} << 31)) detail::parse_fail(1, "point count too large");
  if (lines.size() - 2 != blocks)
    detail::parse_fail(std::min(lines.size(), blocks + 2) + 1,
                       "expected " + std::to_string(blocks) + " block lines, found " + std::to_string(lines.size() - 2));

  std::vector<Block> parsed;
  parsed.reserve(blocks);
  for (std::size_t i = 2; i < lines.size(); ++i) {
    const auto line_no = i + 1;
    const auto words = detail::split_words(lines[i]);
    if (words.empty()) detail::parse_fail(line_no, "empty block");
    Block b;
    for (auto w : words) {
      const auto x = detail::parse_number(w, line_no);
      if (x >= points)
        detail::parse_fail(line_no, "point " + std::to_string(x) + " out of range [0, " + std::to_string(points) + ")");
      b.push_back(static_cast<Point>(x));
    }
    Block sorted = b;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      detail::parse_fail(line_no, "block repeats a point index");
    if (sorted != b && out.canonical) {
      out.canonical = false;
      out.warnings.push_back("line " + std::to_string(line_no) + ": block not in ascending order");
    }
    std::string rebuilt;
    for (std::size_t j = 0; j < b.size(); ++j) rebuilt += (j ? " " : "") + std::to_string(b[j]);
    if (rebuilt != lines[i] && out.canonical) {
      out.canonical = false;
      out.warnings.push_back("line " + std::to_string(line_no) + ": non-canonical spacing or digits");
    }
    if (!parsed.empty() && sorted <= parsed.back()) {
      if (sorted == parsed.back()) detail::parse_fail(line_no, "duplicate block");
      if (out.canonical) {
        out.canonical = false;
        out.warnings.push_back("line " + std::to_string(line_no) + ": blocks not in lexicographic order");
      }
    }
    parsed.push_back(std::move(sorted));
  }
  {
    auto check = parsed;
    std::sort(check.begin(), check.end());
    if (auto it = std::adjacent_find(check.begin(), check.end()); it != check.end())
      throw Error(ErrorCode::ParseError, "duplicate block " + IncidenceStructure::describe(*it));
  }
  if (strict && !out.canonical) throw Error(ErrorCode::NonCanonicalInput, out.warnings.front());
  out.structure = IncidenceStructure(points, std::move(parsed));
  return out;
}

inline IncidenceStructure parse(std::string_view text, bool strict = false) {
  return parse_incidence(text, strict).structure;
}

inline std::string serialize(const IncidenceStructure& s) {
  std::string out = "points " + std::to_string(s.num_points()) + "\nblocks " + std::to_string(s.num_blocks()) + "\n";
  for (const auto& b : s.blocks()) {
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(b[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace papc
