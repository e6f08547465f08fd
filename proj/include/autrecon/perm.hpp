#pragma once

// Automorphisms of the finite powerset algebra P(n). Every such automorphism is
// induced by a permutation of the n atoms, so FinAut stores the atom permutation.
// Composition is right-to-left: compose(f, g) applies g first.

#include <compare>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "autrecon/balg.hpp"

namespace autrecon {

class FinAut {
 public:
  FinAut() = default;

  explicit FinAut(std::vector<std::uint8_t> image) : image_(std::move(image)) {
    if (image_.empty() || image_.size() > kMaxAtoms) throw CapExceeded("FinAut universe size out of range");
    std::uint64_t seen = 0;
    for (const auto x : image_) {
      if (x >= image_.size() || ((seen >> x) & 1U) != 0) throw PreconditionError("FinAut image is not a bijection");
      seen |= std::uint64_t{1} << x;
    }
  }

  static FinAut identity(std::size_t n) {
    std::vector<std::uint8_t> image(n);
    std::iota(image.begin(), image.end(), std::uint8_t{0});
    return FinAut(std::move(image));
  }

  /// Product of the given cycles (they need not be disjoint; applied right to left).
  static FinAut from_cycles(std::size_t n, const std::vector<std::vector<std::size_t>>& cycles);

  std::size_t universe_size() const { return image_.size(); }
  std::size_t operator()(std::size_t atom) const { return image_[atom]; }
  std::span<const std::uint8_t> image() const { return image_; }
  bool is_identity() const {
    for (std::size_t i = 0; i < image_.size(); ++i)
      if (image_[i] != i) return false;
    return true;
  }

  friend bool operator==(const FinAut&, const FinAut&) = default;
  friend auto operator<=>(const FinAut&, const FinAut&) = default;

 private:
  std::vector<std::uint8_t> image_;
};

namespace detail {
inline void check_same_universe(const FinAut& f, const FinAut& g) {
  if (f.universe_size() != g.universe_size()) {
    throw UniverseMismatch("universe mismatch: " + std::to_string(f.universe_size()) + " vs " +
                           std::to_string(g.universe_size()));
  }
}
}  // namespace detail

inline FinElem apply(const FinAut& f, const FinElem& a) {
  if (f.universe_size() != a.universe_size()) {
    throw UniverseMismatch("universe mismatch: " + std::to_string(f.universe_size()) + " vs " +
                           std::to_string(a.universe_size()));
  }
  std::uint64_t out = 0;
  for (std::uint64_t m = a.mask(); m != 0; m &= m - 1) out |= std::uint64_t{1} << f(std::countr_zero(m));
  return FinElem(a.universe_size(), out);
}

inline FinAut compose(const FinAut& f, const FinAut& g) {
  detail::check_same_universe(f, g);
  std::vector<std::uint8_t> image(f.universe_size());
  for (std::size_t i = 0; i < image.size(); ++i) image[i] = static_cast<std::uint8_t>(f(g(i)));
  return FinAut(std::move(image));
}

inline FinAut inverse(const FinAut& f) {
  std::vector<std::uint8_t> image(f.universe_size());
  for (std::size_t i = 0; i < image.size(); ++i) image[f(i)] = static_cast<std::uint8_t>(i);
  return FinAut(std::move(image));
}

inline FinAut FinAut::from_cycles(std::size_t n, const std::vector<std::vector<std::size_t>>& cycles) {
  auto result = identity(n);
  for (auto c = cycles.rbegin(); c != cycles.rend(); ++c) {
    std::vector<std::uint8_t> image(n);
    std::iota(image.begin(), image.end(), std::uint8_t{0});
    std::uint64_t seen = 0;
    for (std::size_t k = 0; k < c->size(); ++k) {
      const auto x = (*c)[k];
      if (x >= n) throw PreconditionError("cycle point " + std::to_string(x) + " outside universe");
      if (((seen >> x) & 1U) != 0) throw PreconditionError("repeated point in cycle");
      seen |= std::uint64_t{1} << x;
      image[x] = static_cast<std::uint8_t>((*c)[(k + 1) % c->size()]);
    }
    result = compose(FinAut(std::move(image)), result);
  }
  return result;
}

/// f^k for any integer k.
inline FinAut power(const FinAut& f, std::int64_t k) {
  const FinAut base = k < 0 ? inverse(f) : f;
  auto result = FinAut::identity(f.universe_size());
  for (std::int64_t i = 0; i < (k < 0 ? -k : k); ++i) result = compose(base, result);
  return result;
}

/// f^h = h f h^-1
inline FinAut conjugate(const FinAut& f, const FinAut& h) { return compose(h, compose(f, inverse(h))); }

/// [f, g] = f g f^-1 g^-1
inline FinAut commutator(const FinAut& f, const FinAut& g) {
  return compose(compose(f, g), compose(inverse(f), inverse(g)));
}

/// [h, f, g] = [[h, f], g]
inline FinAut triple_commutator(const FinAut& h, const FinAut& f, const FinAut& g) {
  return commutator(commutator(h, f), g);
}

/// Support: the join of the atoms moved by f.
inline FinElem var(const FinAut& f) {
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < f.universe_size(); ++i)
    if (f(i) != i) m |= std::uint64_t{1} << i;
  return FinElem(f.universe_size(), m);
}

inline FinElem fix(const FinAut& f) { return complement(var(f)); }

/// Support computed from its definition: the join of every a with f(a) . a = 0.
/// Exponential in n; used as an independent check of var().
inline FinElem var_supremum(const FinAut& f) {
  const std::size_t n = f.universe_size();
  if (n > kDefaultAtomCap) throw CapExceeded("supremum-form var limited to " + std::to_string(kDefaultAtomCap) + " atoms");
  std::uint64_t sup = 0;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    const FinElem a(n, m);
    if (disjoint(apply(f, a), a)) sup |= m;
  }
  return FinElem(n, sup);
}

inline std::size_t order(const FinAut& f) {
  std::size_t result = 1;
  std::uint64_t done = 0;
  for (std::size_t i = 0; i < f.universe_size(); ++i) {
    if (((done >> i) & 1U) != 0) continue;
    std::size_t len = 0;
    std::size_t x = i;
    do {
      done |= std::uint64_t{1} << x;
      x = f(x);
      ++len;
    } while (x != i);
    result = std::lcm(result, len);
  }
  return result;
}

/// Disjoint-cycle form, fixed points omitted, each cycle starting at its least point.
inline std::vector<std::vector<std::size_t>> cycles(const FinAut& f) {
  std::vector<std::vector<std::size_t>> out;
  std::uint64_t done = 0;
  for (std::size_t i = 0; i < f.universe_size(); ++i) {
    if (((done >> i) & 1U) != 0 || f(i) == i) continue;
    std::vector<std::size_t> c;
    std::size_t x = i;
    do {
      done |= std::uint64_t{1} << x;
      c.push_back(x);
      x = f(x);
    } while (x != i);
    out.push_back(std::move(c));
  }
  return out;
}

/// `(0 1)(2 3)@4`; the identity is `()@n`.
inline std::string to_string(const FinAut& f) {
  std::string out;
  for (const auto& c : cycles(f)) {
    out += '(';
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (k != 0) out += ' ';
      out += std::to_string(c[k]);
    }
    out += ')';
  }
  if (out.empty()) out = "()";
  return out + "@" + std::to_string(f.universe_size());
}

namespace detail {
/// Parses a run of `(a b c)` groups; stops at the first character that is not '('.
inline std::vector<std::vector<std::size_t>> parse_cycle_list(std::string_view& s) {
  std::vector<std::vector<std::size_t>> out;
  s = trim(s);
  while (!s.empty() && s.front() == '(') {
    const auto close = s.find(')');
    if (close == std::string_view::npos) throw ParseError("unterminated cycle");
    std::vector<std::size_t> c;
    std::string_view body = s.substr(1, close - 1);
    std::size_t i = 0;
    while (i < body.size()) {
      while (i < body.size() && (body[i] == ' ' || body[i] == ',')) ++i;
      std::size_t j = i;
      while (j < body.size() && body[j] != ' ' && body[j] != ',') ++j;
      if (j > i) c.push_back(static_cast<std::size_t>(parse_uint(body.substr(i, j - i), "cycle")));
      i = j;
    }
    if (!c.empty()) out.push_back(std::move(c));
    s.remove_prefix(close + 1);
    s = trim(s);
  }
  return out;
}

inline std::size_t max_point(const std::vector<std::vector<std::size_t>>& cs) {
  std::size_t top = 0;
  for (const auto& c : cs)
    for (const auto x : c) top = std::max(top, x + 1);
  return top;
}
}  // namespace detail

/// Parses cycle notation. The `@n` suffix is required unless `default_n` is non-zero,
/// in which case it defaults to max(default_n, largest point + 1).
inline FinAut parse_fin_aut(std::string_view text, std::size_t default_n = 0) {
  auto s = detail::trim(text);
  const auto cs = detail::parse_cycle_list(s);
  std::size_t n = 0;
  if (detail::consume(s, "@")) {
    n = static_cast<std::size_t>(detail::parse_uint(s, "permutation universe size"));
  } else if (!detail::trim(s).empty()) {
    throw ParseError("unexpected text after cycles: '" + std::string(s) + "'");
  } else if (default_n != 0) {
    n = std::max(default_n, detail::max_point(cs));
  } else {
    throw ParseError("permutation needs an '@n' universe suffix");
  }
  if (detail::max_point(cs) > n) throw ParseError("cycle point outside universe");
  return FinAut::from_cycles(n, cs);
}

}  // namespace autrecon
