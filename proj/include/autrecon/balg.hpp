#pragma once

// Boolean algebras used throughout the library:
//   * FinElem, an element of the finite powerset algebra P(n), stored as a bitmask;
//   * NSet, an eventually periodic subset of the naturals, the symbolic stand-in
//     for elements of P(N)/fin.
// Both are immutable values; every operation is a pure function.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "autrecon/detail/text.hpp"
#include "autrecon/error.hpp"

namespace autrecon {

/// Hard limit imposed by the 64-bit member mask.
inline constexpr std::size_t kMaxAtoms = 64;
/// Default configuration cap on atoms for exhaustive sweeps.
inline constexpr std::size_t kDefaultAtomCap = 16;

class FinElem {
 public:
  FinElem() = default;

  explicit FinElem(std::size_t universe_size, std::uint64_t mask = 0) : n_(universe_size), mask_(mask) {
    if (universe_size == 0 || universe_size > kMaxAtoms) {
      throw CapExceeded("universe size " + std::to_string(universe_size) + " outside [1, " +
                        std::to_string(kMaxAtoms) + "]");
    }
    if ((mask & ~full_mask(universe_size)) != 0) {
      throw PreconditionError("member index outside universe of size " + std::to_string(universe_size));
    }
  }

  static FinElem empty(std::size_t n) { return FinElem(n, 0); }
  static FinElem full(std::size_t n) { return FinElem(n, full_mask(n)); }
  static FinElem atom(std::size_t n, std::size_t i) {
    if (i >= n) throw PreconditionError("atom " + std::to_string(i) + " outside universe");
    return FinElem(n, std::uint64_t{1} << i);
  }
  template <class Range>
  static FinElem of(std::size_t n, const Range& members) {
    std::uint64_t m = 0;
    for (const auto i : members) {
      if (static_cast<std::size_t>(i) >= n) {
        throw PreconditionError("member " + std::to_string(i) + " outside universe of size " + std::to_string(n));
      }
      m |= std::uint64_t{1} << i;
    }
    return FinElem(n, m);
  }
  static FinElem of(std::size_t n, std::initializer_list<std::size_t> members) {
    return of<std::initializer_list<std::size_t>>(n, members);
  }

  static constexpr std::uint64_t full_mask(std::size_t n) {
    return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  }

  std::size_t universe_size() const { return n_; }
  std::uint64_t mask() const { return mask_; }
  bool contains(std::size_t i) const { return i < n_ && ((mask_ >> i) & 1U) != 0; }
  std::size_t count() const { return static_cast<std::size_t>(std::popcount(mask_)); }
  bool is_zero() const { return mask_ == 0; }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for (std::uint64_t m = mask_; m != 0; m &= m - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
    return out;
  }

  friend bool operator==(const FinElem&, const FinElem&) = default;
  friend auto operator<=>(const FinElem&, const FinElem&) = default;

 private:
  std::size_t n_ = 0;
  std::uint64_t mask_ = 0;
};

namespace detail {
inline void check_same_universe(const FinElem& a, const FinElem& b) {
  if (a.universe_size() != b.universe_size()) {
    throw UniverseMismatch("universe mismatch: " + std::to_string(a.universe_size()) + " vs " +
                           std::to_string(b.universe_size()));
  }
}
}  // namespace detail

inline FinElem meet(const FinElem& a, const FinElem& b) {
  detail::check_same_universe(a, b);
  return FinElem(a.universe_size(), a.mask() & b.mask());
}
inline FinElem join(const FinElem& a, const FinElem& b) {
  detail::check_same_universe(a, b);
  return FinElem(a.universe_size(), a.mask() | b.mask());
}
inline FinElem complement(const FinElem& a) {
  return FinElem(a.universe_size(), ~a.mask() & FinElem::full_mask(a.universe_size()));
}
inline FinElem difference(const FinElem& a, const FinElem& b) {
  detail::check_same_universe(a, b);
  return FinElem(a.universe_size(), a.mask() & ~b.mask());
}
inline bool leq(const FinElem& a, const FinElem& b) {
  detail::check_same_universe(a, b);
  return (a.mask() & ~b.mask()) == 0;
}
inline bool disjoint(const FinElem& a, const FinElem& b) { return meet(a, b).is_zero(); }

/// `{0,2,3}@4`
inline std::string to_string(const FinElem& a) {
  return detail::join_indices(a.members()) + "@" + std::to_string(a.universe_size());
}

inline FinElem parse_fin_elem(std::string_view text) {
  auto s = detail::trim(text);
  const auto members = detail::parse_index_list(s, "FinElem");
  detail::expect(s, "@", "FinElem");
  const auto n = detail::parse_uint(s, "FinElem universe size");
  return FinElem::of(static_cast<std::size_t>(n), members);
}

/// Eventually periodic subset of N.
///
/// n is a member iff (n < window and explicit[n]) or (n >= window and tail[n mod period]).
/// The window is always a multiple of the period. Values are kept in canonical form
/// (minimal period, then minimal window), so structural equality is set equality.
class NSet {
 public:
  NSet() : tail_(1, false) {}

  NSet(std::size_t period, std::vector<bool> tail, std::size_t window, std::vector<bool> explicit_members)
      : period_(period), window_(window), tail_(std::move(tail)), explicit_(std::move(explicit_members)) {
    if (period_ == 0) throw PreconditionError("NSet period must be >= 1");
    if (tail_.size() != period_) throw PreconditionError("NSet tail size must equal the period");
    if (window_ % period_ != 0) throw PreconditionError("NSet window must be a multiple of the period");
    if (explicit_.size() != window_) throw PreconditionError("NSet explicit size must equal the window");
    normalize();
  }

  static NSet empty() { return NSet(); }
  static NSet naturals() { return NSet(1, {true}, 0, {}); }

  /// Finite set with the given members.
  template <class Range>
  static NSet finite(const Range& members) {
    std::uint64_t top = 0;
    for (const auto m : members) top = std::max<std::uint64_t>(top, static_cast<std::uint64_t>(m) + 1);
    std::vector<bool> bits(top, false);
    for (const auto m : members) bits[static_cast<std::size_t>(m)] = true;
    return NSet(1, {false}, top, std::move(bits));
  }
  static NSet finite(std::initializer_list<std::uint64_t> members) {
    return finite<std::initializer_list<std::uint64_t>>(members);
  }

  /// {n : n mod period in residues}.
  template <class Range>
  static NSet residues(std::size_t period, const Range& residues) {
    if (period == 0) throw PreconditionError("NSet period must be >= 1");
    std::vector<bool> tail(period, false);
    for (const auto r : residues) {
      if (static_cast<std::size_t>(r) >= period) throw PreconditionError("residue outside period");
      tail[static_cast<std::size_t>(r)] = true;
    }
    return NSet(period, std::move(tail), 0, {});
  }
  static NSet residues(std::size_t period, std::initializer_list<std::size_t> rs) {
    return residues<std::initializer_list<std::size_t>>(period, rs);
  }

  /// Builds the canonical set agreeing with `member(n)` below `window` and periodic beyond it.
  /// The window is first rounded up to a multiple of the period.
  template <class Pred>
  static NSet tabulate(std::size_t period, std::size_t window, Pred&& member) {
    if (period == 0) throw PreconditionError("NSet period must be >= 1");
    window = (window + period - 1) / period * period;
    std::vector<bool> tail(period);
    std::vector<bool> expl(window);
    for (std::size_t i = 0; i < window; ++i) expl[i] = member(static_cast<std::uint64_t>(i));
    for (std::size_t r = 0; r < period; ++r) tail[r] = member(static_cast<std::uint64_t>(window + r));
    return NSet(period, std::move(tail), window, std::move(expl));
  }

  bool contains(std::uint64_t n) const {
    if (n < window_) return explicit_[static_cast<std::size_t>(n)];
    return tail_[static_cast<std::size_t>(n % period_)];
  }

  std::size_t period() const { return period_; }
  std::size_t window() const { return window_; }
  const std::vector<bool>& tail() const { return tail_; }
  const std::vector<bool>& explicit_bits() const { return explicit_; }

  std::vector<std::size_t> tail_residues() const {
    std::vector<std::size_t> out;
    for (std::size_t r = 0; r < period_; ++r)
      if (tail_[r]) out.push_back(r);
    return out;
  }
  std::vector<std::size_t> explicit_members() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < window_; ++i)
      if (explicit_[i]) out.push_back(i);
    return out;
  }

  bool is_finite() const { return std::none_of(tail_.begin(), tail_.end(), [](bool b) { return b; }); }

  friend bool operator==(const NSet&, const NSet&) = default;

 private:
  void normalize() {
    // Minimal period of the tail pattern: smallest divisor q of p with tail q-periodic.
    for (std::size_t q = 1; q < period_; ++q) {
      if (period_ % q != 0) continue;
      bool periodic = true;
      for (std::size_t r = q; r < period_ && periodic; ++r) periodic = tail_[r] == tail_[r % q];
      if (periodic) {
        tail_.resize(q);
        period_ = q;
        break;
      }
    }
    // Minimal window: drop the trailing part of the explicit block that already follows the tail.
    std::size_t keep = 0;
    for (std::size_t i = window_; i-- > 0;) {
      if (explicit_[i] != tail_[i % period_]) {
        keep = i + 1;
        break;
      }
    }
    const std::size_t new_window = (keep + period_ - 1) / period_ * period_;
    explicit_.resize(new_window);
    window_ = new_window;
  }

  std::size_t period_ = 1;
  std::size_t window_ = 0;
  std::vector<bool> tail_;
  std::vector<bool> explicit_;
};

namespace detail {
template <class Op>
NSet combine(const NSet& a, const NSet& b, Op op) {
  const std::size_t period = std::lcm(a.period(), b.period());
  const std::size_t base = std::max(a.window(), b.window());
  const std::size_t window = (base + period - 1) / period * period;
  return NSet::tabulate(period, window, [&](std::uint64_t n) { return op(a.contains(n), b.contains(n)); });
}
}  // namespace detail

inline NSet meet(const NSet& a, const NSet& b) {
  return detail::combine(a, b, [](bool x, bool y) { return x && y; });
}
inline NSet join(const NSet& a, const NSet& b) {
  return detail::combine(a, b, [](bool x, bool y) { return x || y; });
}
inline NSet difference(const NSet& a, const NSet& b) {
  return detail::combine(a, b, [](bool x, bool y) { return x && !y; });
}
inline NSet symmetric_difference(const NSet& a, const NSet& b) {
  return detail::combine(a, b, [](bool x, bool y) { return x != y; });
}
inline NSet complement(const NSet& a) {
  std::vector<bool> tail(a.tail());
  tail.flip();
  std::vector<bool> expl(a.explicit_bits());
  expl.flip();
  return NSet(a.period(), std::move(tail), a.window(), std::move(expl));
}
inline bool leq(const NSet& a, const NSet& b) { return difference(a, b) == NSet::empty(); }

/// The set is finite, i.e. zero in P(N)/fin.
inline bool is_zero_mod_fin(const NSet& a) { return a.is_finite(); }

/// Equality in P(N)/fin: tails agree once both are refined to the lcm period.
inline bool eq_mod_fin(const NSet& a, const NSet& b) {
  const std::size_t period = std::lcm(a.period(), b.period());
  for (std::size_t r = 0; r < period; ++r) {
    if (a.tail()[r % a.period()] != b.tail()[r % b.period()]) return false;
  }
  return true;
}

/// Order in P(N)/fin: a \ b is finite.
inline bool leq_mod_fin(const NSet& a, const NSet& b) { return difference(a, b).is_finite(); }

/// `per=<p>;res={...};win=<W>;exp={...}`
inline std::string to_string(const NSet& a) {
  return "per=" + std::to_string(a.period()) + ";res=" + detail::join_indices(a.tail_residues()) +
         ";win=" + std::to_string(a.window()) + ";exp=" + detail::join_indices(a.explicit_members());
}

inline NSet parse_nset(std::string_view text) {
  auto s = detail::trim(text);
  detail::expect(s, "per=", "NSet");
  const auto semi = s.find(';');
  if (semi == std::string_view::npos) throw ParseError("NSet: missing ';' after period");
  const auto period = static_cast<std::size_t>(detail::parse_uint(s.substr(0, semi), "NSet period"));
  s.remove_prefix(semi + 1);
  detail::expect(s, "res=", "NSet");
  const auto res = detail::parse_index_list(s, "NSet residues");
  detail::expect(s, ";win=", "NSet");
  const auto semi2 = s.find(';');
  if (semi2 == std::string_view::npos) throw ParseError("NSet: missing ';' after window");
  const auto window = static_cast<std::size_t>(detail::parse_uint(s.substr(0, semi2), "NSet window"));
  s.remove_prefix(semi2 + 1);
  detail::expect(s, "exp=", "NSet");
  const auto exp = detail::parse_index_list(s, "NSet explicit");
  if (!detail::trim(s).empty()) throw ParseError("NSet: trailing characters");
  if (period == 0) throw ParseError("NSet: period must be >= 1");
  std::vector<bool> tail(period, false);
  for (const auto r : res) {
    if (r >= period) throw ParseError("NSet: residue outside period");
    tail[r] = true;
  }
  std::vector<bool> expl(window, false);
  for (const auto e : exp) {
    if (e >= window) throw ParseError("NSet: explicit member outside window");
    expl[e] = true;
  }
  if (window % period != 0) throw ParseError("NSet: window must be a multiple of the period");
  return NSet(period, std::move(tail), window, std::move(expl));
}

}  // namespace autrecon
