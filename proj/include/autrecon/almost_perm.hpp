#pragma once

// Almost-permutations of N: injections between cofinite subsets of N, the
// stand-ins for trivial automorphisms of P(N)/fin. Below the window the map is
// tabulated (possibly undefined at some points); from the window on it follows
// a per-residue displacement, f(n) = n + d(n mod p).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "autrecon/balg.hpp"
#include "autrecon/perm.hpp"

namespace autrecon {

/// Windows produced by composition or inversion may not grow past this.
inline constexpr std::size_t kMaxAlmostPermWindow = 1'000'000;

class AlmostPerm {
 public:
  static constexpr std::int64_t kUndefined = -1;

  /// Identity of N.
  AlmostPerm() : AlmostPerm(0, {}, 1, {0}) {}

  /// `window_map[i]` is f(i) for i < window, or kUndefined. The window is
  /// extended to a multiple of the period, validated, then put in canonical form.
  AlmostPerm(std::size_t window, std::vector<std::int64_t> window_map, std::size_t period,
             std::vector<std::int64_t> displacement)
      : window_(window), map_(std::move(window_map)), period_(period), disp_(std::move(displacement)) {
    if (period_ == 0) throw PreconditionError("AlmostPerm period must be >= 1");
    if (disp_.size() != period_) throw PreconditionError("AlmostPerm needs one displacement per residue");
    if (map_.size() != window_) throw PreconditionError("AlmostPerm window map size must equal the window");
    const std::size_t rounded = round_up(window_, period_);
    for (std::size_t n = window_; n < rounded; ++n) map_.push_back(static_cast<std::int64_t>(n) + disp_[n % period_]);
    window_ = rounded;
    validate();
    canonicalize();
  }

  /// f(2k) = 2k+1, f(2k+1) = 2k.
  static AlmostPerm pair_swap() { return AlmostPerm(0, {}, 2, {+1, -1}); }
  /// f(n) = n + shift on every residue mod `period` (shift must be a multiple of the period).
  static AlmostPerm shift(std::size_t period, std::int64_t shift) {
    return AlmostPerm(0, {}, period, std::vector<std::int64_t>(period, shift));
  }
  /// Finite-support permutation with identity tail.
  static AlmostPerm finite(const FinAut& p) {
    std::vector<std::int64_t> map(p.universe_size());
    for (std::size_t i = 0; i < map.size(); ++i) map[i] = static_cast<std::int64_t>(p(i));
    const std::size_t window = map.size();
    return AlmostPerm(window, std::move(map), 1, {0});
  }

  std::size_t window() const { return window_; }
  std::size_t period() const { return period_; }
  const std::vector<std::int64_t>& window_map() const { return map_; }
  const std::vector<std::int64_t>& displacement() const { return disp_; }

  std::optional<std::uint64_t> operator()(std::uint64_t n) const {
    if (n < window_) {
      const auto v = map_[static_cast<std::size_t>(n)];
      if (v == kUndefined) return std::nullopt;
      return static_cast<std::uint64_t>(v);
    }
    return static_cast<std::uint64_t>(static_cast<std::int64_t>(n) + disp_[n % period_]);
  }

  std::optional<std::uint64_t> preimage(std::uint64_t m) const {
    if (const auto it = window_inverse_.find(m); it != window_inverse_.end()) return it->second;
    const std::size_t r = residue_inverse_[m % period_];
    const std::int64_t n = static_cast<std::int64_t>(m) - disp_[r];
    if (n >= static_cast<std::int64_t>(window_) && static_cast<std::size_t>(n) % period_ == r) {
      return static_cast<std::uint64_t>(n);
    }
    return std::nullopt;
  }

  /// Residue permutation r -> (r + d(r)) mod p of the tail.
  std::size_t residue_image(std::size_t r) const { return residue_image_[r]; }

  std::int64_t min_displacement() const { return *std::min_element(disp_.begin(), disp_.end()); }
  std::int64_t max_displacement() const { return *std::max_element(disp_.begin(), disp_.end()); }
  std::int64_t max_abs_displacement() const { return std::max(-min_displacement(), max_displacement()); }

  friend bool operator==(const AlmostPerm& a, const AlmostPerm& b) {
    return a.window_ == b.window_ && a.period_ == b.period_ && a.map_ == b.map_ && a.disp_ == b.disp_;
  }

  static std::size_t round_up(std::size_t x, std::size_t m) { return (x + m - 1) / m * m; }

 private:
  static std::int64_t mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

  void validate() {
    const auto p = static_cast<std::int64_t>(period_);
    residue_image_.assign(period_, 0);
    residue_inverse_.assign(period_, period_);
    for (std::size_t r = 0; r < period_; ++r) {
      const auto s = static_cast<std::size_t>(mod(static_cast<std::int64_t>(r) + disp_[r], p));
      if (residue_inverse_[s] != period_) throw PreconditionError("AlmostPerm tail residue map is not a permutation");
      residue_image_[r] = s;
      residue_inverse_[s] = r;
      if (static_cast<std::int64_t>(window_ + r) + disp_[r] < 0) {
        throw PreconditionError("AlmostPerm tail maps below zero");
      }
    }
    window_inverse_.clear();
    for (std::size_t n = 0; n < window_; ++n) {
      const auto v = map_[n];
      if (v == kUndefined) continue;
      if (v < 0) throw PreconditionError("AlmostPerm window map has a negative value");
      if (!window_inverse_.emplace(static_cast<std::uint64_t>(v), n).second) {
        throw PreconditionError("AlmostPerm window map is not injective at value " + std::to_string(v));
      }
      // Collision with the tail range: class s = v mod p starts at window + r + d(r).
      const auto s = static_cast<std::size_t>(v % p);
      const auto r = residue_inverse_[s];
      if (v >= static_cast<std::int64_t>(window_ + r) + disp_[r]) {
        throw PreconditionError("AlmostPerm window value " + std::to_string(v) + " collides with the tail range");
      }
    }
  }

  void canonicalize() {
    // Minimal period of the displacement pattern.
    for (std::size_t q = 1; q < period_; ++q) {
      if (period_ % q != 0) continue;
      bool periodic = true;
      for (std::size_t r = q; r < period_ && periodic; ++r) periodic = disp_[r] == disp_[r % q];
      if (periodic) {
        disp_.resize(q);
        period_ = q;
        break;
      }
    }
    // Minimal window: trailing entries that already follow the tail rule are dropped.
    std::size_t keep = 0;
    for (std::size_t n = window_; n-- > 0;) {
      const std::int64_t rule = static_cast<std::int64_t>(n) + disp_[n % period_];
      if (rule < 0 || map_[n] != rule) {
        keep = n + 1;
        break;
      }
    }
    const std::size_t w = round_up(keep, period_);
    if (w != window_ || residue_image_.size() != period_) {
      map_.resize(w);
      window_ = w;
      validate();
    }
  }

  std::size_t window_ = 0;
  std::vector<std::int64_t> map_;
  std::size_t period_ = 1;
  std::vector<std::int64_t> disp_;
  std::vector<std::size_t> residue_image_;
  std::vector<std::size_t> residue_inverse_;
  std::unordered_map<std::uint64_t, std::uint64_t> window_inverse_;
};

/// {n : f(n) = n}
inline NSet fix_set(const AlmostPerm& f) {
  return NSet::tabulate(f.period(), f.window(), [&](std::uint64_t n) {
    const auto v = f(n);
    return v && *v == n;
  });
}

/// N \ fix_set(f): moved points together with points outside the domain.
inline NSet var_set(const AlmostPerm& f) { return complement(fix_set(f)); }

/// f o g (g applied first), defined where g(n) lies in the domain of f.
inline AlmostPerm compose(const AlmostPerm& f, const AlmostPerm& g) {
  const std::size_t period = std::lcm(f.period(), g.period());
  const std::int64_t need =
      std::max<std::int64_t>({static_cast<std::int64_t>(g.window()),
                              static_cast<std::int64_t>(f.window()) - g.min_displacement(), 0});
  const std::size_t window = AlmostPerm::round_up(static_cast<std::size_t>(need), period);
  if (window > kMaxAlmostPermWindow) throw CapExceeded("composition window exceeds " + std::to_string(kMaxAlmostPermWindow));
  std::vector<std::int64_t> map(window);
  for (std::size_t n = 0; n < window; ++n) {
    const auto gn = g(n);
    const auto fgn = gn ? f(*gn) : std::nullopt;
    map[n] = fgn ? static_cast<std::int64_t>(*fgn) : AlmostPerm::kUndefined;
  }
  std::vector<std::int64_t> disp(period);
  for (std::size_t r = 0; r < period; ++r) {
    const std::uint64_t n = window + r;
    disp[r] = static_cast<std::int64_t>(*f(*g(n))) - static_cast<std::int64_t>(n);
  }
  return AlmostPerm(window, std::move(map), period, std::move(disp));
}

inline AlmostPerm inverse(const AlmostPerm& f) {
  const std::size_t p = f.period();
  std::int64_t top = static_cast<std::int64_t>(f.window()) + f.max_displacement() + static_cast<std::int64_t>(p);
  for (const auto v : f.window_map()) top = std::max(top, v + 1);
  const std::size_t window = AlmostPerm::round_up(static_cast<std::size_t>(std::max<std::int64_t>(top, 0)), p);
  if (window > kMaxAlmostPermWindow) throw CapExceeded("inverse window exceeds " + std::to_string(kMaxAlmostPermWindow));
  std::vector<std::int64_t> map(window);
  for (std::size_t m = 0; m < window; ++m) {
    const auto n = f.preimage(m);
    map[m] = n ? static_cast<std::int64_t>(*n) : AlmostPerm::kUndefined;
  }
  std::vector<std::int64_t> disp(p);
  for (std::size_t r = 0; r < p; ++r) disp[f.residue_image(r)] = -f.displacement()[r];
  return AlmostPerm(window, std::move(map), p, std::move(disp));
}

/// f(n) = g(n) for all but finitely many n.
inline bool eq_mod_fin(const AlmostPerm& f, const AlmostPerm& g) {
  const std::size_t period = std::lcm(f.period(), g.period());
  for (std::size_t r = 0; r < period; ++r) {
    if (f.displacement()[r % f.period()] != g.displacement()[r % g.period()]) return false;
  }
  return true;
}

/// f is the identity below its window and beyond it.
inline bool is_identity(const AlmostPerm& f) { return f == AlmostPerm(); }

// --- text form ---------------------------------------------------------------
//   win:[(0 1)(4 7)];tail:p=2,d0=+0,d1=+0
//   win:6{0>7,3>_};tail:p=3,d0=+3,d1=+3,d2=+3
// The cycle form names a permutation of [0, W) with W the smallest multiple of
// p above every listed point. The map form lists f(i) for i < W where it
// differs from i; `_` marks a point outside the domain.

inline std::string to_string(const AlmostPerm& f) {
  std::string out = "win:";
  const std::size_t W = f.window();
  bool permutation = true;
  std::size_t top = 0;
  for (std::size_t i = 0; i < W; ++i) {
    const auto v = f.window_map()[i];
    if (v < 0 || static_cast<std::size_t>(v) >= W) permutation = false;
    if (v != static_cast<std::int64_t>(i)) top = std::max(top, std::max<std::size_t>(i, v < 0 ? 0 : v) + 1);
  }
  if (permutation && W != 0 && AlmostPerm::round_up(top, f.period()) != W) permutation = false;
  if (permutation) {
    std::vector<bool> done(W, false);
    out += '[';
    for (std::size_t i = 0; i < W; ++i) {
      if (done[i] || f.window_map()[i] == static_cast<std::int64_t>(i)) continue;
      out += '(';
      std::size_t x = i;
      bool first = true;
      do {
        done[x] = true;
        if (!first) out += ' ';
        out += std::to_string(x);
        first = false;
        x = static_cast<std::size_t>(f.window_map()[x]);
      } while (x != i);
      out += ')';
    }
    out += ']';
  } else {
    out += std::to_string(W) + '{';
    bool first = true;
    for (std::size_t i = 0; i < W; ++i) {
      const auto v = f.window_map()[i];
      if (v == static_cast<std::int64_t>(i)) continue;
      if (!first) out += ',';
      out += std::to_string(i) + '>' + (v == AlmostPerm::kUndefined ? std::string("_") : std::to_string(v));
      first = false;
    }
    out += '}';
  }
  out += ";tail:p=" + std::to_string(f.period());
  for (std::size_t r = 0; r < f.period(); ++r) {
    const auto d = f.displacement()[r];
    out += ",d" + std::to_string(r) + "=" + (d >= 0 ? "+" : "-") + std::to_string(d >= 0 ? d : -d);
  }
  return out;
}

inline AlmostPerm parse_almost_perm(std::string_view text) {
  auto s = detail::trim(text);
  const auto semi = s.find(";tail:");
  if (semi == std::string_view::npos) throw ParseError("AlmostPerm: missing ';tail:'");
  auto win = s.substr(0, semi);
  auto tail = s.substr(semi + 6);

  // Tail first: the cycle form needs the period to fix the window.
  auto fields = detail::split(tail, ',');
  auto head = detail::trim(fields.front());
  detail::expect(head, "p=", "AlmostPerm tail");
  const auto p = static_cast<std::size_t>(detail::parse_uint(head, "AlmostPerm period"));
  if (p == 0) throw ParseError("AlmostPerm: period must be >= 1");
  if (fields.size() != p + 1) throw ParseError("AlmostPerm: expected " + std::to_string(p) + " displacements");
  std::vector<std::int64_t> disp(p);
  for (std::size_t r = 0; r < p; ++r) {
    auto item = detail::trim(fields[r + 1]);
    detail::expect(item, "d" + std::to_string(r) + "=", "AlmostPerm tail");
    disp[r] = detail::parse_int(item, "AlmostPerm displacement");
  }

  detail::expect(win, "win:", "AlmostPerm");
  std::size_t W = 0;
  std::vector<std::int64_t> map;
  if (detail::consume(win, "[")) {
    const auto close = win.rfind(']');
    if (close == std::string_view::npos) throw ParseError("AlmostPerm: unterminated '['");
    auto body = win.substr(0, close);
    const auto cs = detail::parse_cycle_list(body);
    if (!detail::trim(body).empty()) throw ParseError("AlmostPerm: bad cycle list");
    W = AlmostPerm::round_up(detail::max_point(cs), p);
    map.resize(W);
    std::iota(map.begin(), map.end(), std::int64_t{0});
    std::vector<bool> used(W, false);
    for (const auto& c : cs) {
      for (std::size_t k = 0; k < c.size(); ++k) {
        if (used[c[k]]) throw ParseError("AlmostPerm: cycles must be disjoint");
        used[c[k]] = true;
        map[c[k]] = static_cast<std::int64_t>(c[(k + 1) % c.size()]);
      }
    }
  } else {
    const auto brace = win.find('{');
    if (brace == std::string_view::npos) throw ParseError("AlmostPerm: window must be '[cycles]' or 'W{...}'");
    W = static_cast<std::size_t>(detail::parse_uint(win.substr(0, brace), "AlmostPerm window"));
    if (W > kMaxAlmostPermWindow) throw CapExceeded("AlmostPerm window too large");
    auto body = win.substr(brace + 1);
    if (body.empty() || body.back() != '}') throw ParseError("AlmostPerm: unterminated '{'");
    body.remove_suffix(1);
    map.resize(W);
    std::iota(map.begin(), map.end(), std::int64_t{0});
    if (!detail::trim(body).empty()) {
      for (auto entry : detail::split(body, ',')) {
        const auto gt = entry.find('>');
        if (gt == std::string_view::npos) throw ParseError("AlmostPerm: map entries look like 'i>j'");
        const auto i = detail::parse_uint(entry.substr(0, gt), "AlmostPerm map");
        if (i >= W) throw ParseError("AlmostPerm: map entry outside the window");
        const auto rhs = detail::trim(entry.substr(gt + 1));
        map[i] = rhs == "_" ? AlmostPerm::kUndefined : detail::parse_int(rhs, "AlmostPerm map");
      }
    }
  }
  if (W % p != 0) throw ParseError("AlmostPerm: window must be a multiple of the period");
  return AlmostPerm(W, std::move(map), p, std::move(disp));
}

// --- random generation -------------------------------------------------------

struct RandomPermOptions {
  std::size_t max_window = 10'000;
  std::size_t max_period = 12;
};

namespace detail {
/// Uniform-enough draw in [lo, hi] from a 64-bit engine; portable across standard libraries.
inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  return lo + rng() % (hi - lo + 1);
}

template <class T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[draw(rng, 0, i - 1)]);
}
}  // namespace detail

/// Random valid almost-permutation. The tail permutes residues with small
/// drifts, so orbits of every kind (finite cycles, one-way and two-way infinite
/// chains) occur; the window matches the leftover points randomly, keeping a
/// random fraction of them fixed.
inline AlmostPerm random_almost_perm(std::mt19937_64& rng, const RandomPermOptions& opt = {}) {
  const std::size_t p = detail::draw(rng, 1, std::max<std::size_t>(opt.max_period, 1));
  std::vector<std::size_t> sigma(p);
  std::iota(sigma.begin(), sigma.end(), std::size_t{0});
  if (detail::draw(rng, 0, 3) != 0) detail::shuffle(sigma, rng);
  const bool drift = detail::draw(rng, 0, 2) != 0;
  std::vector<std::int64_t> disp(p);
  for (std::size_t r = 0; r < p; ++r) {
    const std::int64_t m = drift ? static_cast<std::int64_t>(detail::draw(rng, 0, 2)) - 1 : 0;
    disp[r] = static_cast<std::int64_t>(sigma[r]) - static_cast<std::int64_t>(r) + static_cast<std::int64_t>(p) * m;
  }

  // Window: log-uniform multiple of p in [2p, max_window].
  const std::size_t lo = 2 * p;
  const std::size_t hi = std::max(lo, opt.max_window / p * p);
  const double u = static_cast<double>(detail::draw(rng, 0, 1'000'000)) / 1e6;
  const auto raw = static_cast<std::size_t>(static_cast<double>(lo) * std::pow(static_cast<double>(hi) / lo, u));
  const std::size_t W = std::clamp(raw / p * p, lo, hi);

  // Points missed by the tail range: class sigma(r) below W + r + d(r).
  std::vector<std::int64_t> holes;
  for (std::size_t r = 0; r < p; ++r) {
    const auto start = static_cast<std::int64_t>(W + r) + disp[r];
    for (auto m = static_cast<std::int64_t>(sigma[r]); m < start; m += static_cast<std::int64_t>(p)) holes.push_back(m);
  }
  std::sort(holes.begin(), holes.end());

  std::vector<std::int64_t> map(W, AlmostPerm::kUndefined);
  std::vector<bool> hole_used(holes.size(), false);
  const auto keep_fixed = detail::draw(rng, 0, 100);
  std::vector<std::size_t> free_domain;
  for (std::size_t n = 0; n < W; ++n) {
    const auto it = std::lower_bound(holes.begin(), holes.end(), static_cast<std::int64_t>(n));
    if (it != holes.end() && *it == static_cast<std::int64_t>(n) && detail::draw(rng, 0, 99) < keep_fixed) {
      map[n] = static_cast<std::int64_t>(n);
      hole_used[static_cast<std::size_t>(it - holes.begin())] = true;
    } else {
      free_domain.push_back(n);
    }
  }
  std::vector<std::int64_t> free_range;
  for (std::size_t k = 0; k < holes.size(); ++k)
    if (!hole_used[k]) free_range.push_back(holes[k]);
  detail::shuffle(free_domain, rng);
  detail::shuffle(free_range, rng);
  for (std::size_t k = 0; k < std::min(free_domain.size(), free_range.size()); ++k) map[free_domain[k]] = free_range[k];
  return AlmostPerm(W, std::move(map), p, std::move(disp));
}

}  // namespace autrecon
