#pragma once

#include <cctype>
#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "autrecon/error.hpp"

namespace autrecon::detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline bool consume(std::string_view& s, std::string_view prefix) {
  if (s.substr(0, prefix.size()) != prefix) return false;
  s.remove_prefix(prefix.size());
  return true;
}

inline void expect(std::string_view& s, std::string_view prefix, std::string_view what) {
  if (!consume(s, prefix)) {
    throw ParseError("expected '" + std::string(prefix) + "' in " + std::string(what) + " near '" +
                     std::string(s.substr(0, 16)) + "'");
  }
}

inline std::int64_t parse_int(std::string_view s, std::string_view what) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw ParseError("bad integer '" + std::string(s) + "' in " + std::string(what));
  }
  return value;
}

inline std::uint64_t parse_uint(std::string_view s, std::string_view what) {
  const auto v = parse_int(s, what);
  if (v < 0) throw ParseError("negative value '" + std::string(s) + "' in " + std::string(what));
  return static_cast<std::uint64_t>(v);
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

/// Parses `{a,b,c}` (possibly empty) and advances past the closing brace.
inline std::vector<std::uint64_t> parse_index_list(std::string_view& s, std::string_view what) {
  expect(s, "{", what);
  const auto close = s.find('}');
  if (close == std::string_view::npos) throw ParseError("unterminated '{' in " + std::string(what));
  const auto body = trim(s.substr(0, close));
  s.remove_prefix(close + 1);
  std::vector<std::uint64_t> out;
  if (body.empty()) return out;
  for (auto item : split(body, ',')) out.push_back(parse_uint(item, what));
  return out;
}

template <class Range>
std::string join_indices(const Range& values) {
  std::string out = "{";
  bool first = true;
  for (const auto v : values) {
    if (!first) out += ',';
    out += std::to_string(v);
    first = false;
  }
  out += '}';
  return out;
}

}  // namespace autrecon::detail
