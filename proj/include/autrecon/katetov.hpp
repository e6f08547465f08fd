#pragma once

// Three-part decomposition of the moved set of an almost-permutation:
// var(f) = E0 + E1 + E2 with f[E_i] . E_i = 0 for each i.
//
// Beyond a threshold T the parts are periodic, colored by the tail structure:
//   * residues on a sigma-cycle of length m >= 2 are colored by their position
//     j on the cycle (j mod 3 if 3 | m, j mod 2 if m is even, otherwise j mod 2
//     with the last position colored 2);
//   * a residue fixed by sigma with displacement d = p*t != 0 shifts within its
//     class; the point r + p*u gets color floor(u/|t|) mod 3, counted upward
//     when t > 0 and downward when t < 0, so f advances the color by one.
// Below T, each orbit segment is walked from its least point and colored
// greedily. Every point has at most two neighbors (pre-image and image), so
// three colors always suffice.

#include <array>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "autrecon/almost_perm.hpp"

namespace autrecon {

struct KatetovParts {
  std::array<NSet, 3> parts;
  const NSet& operator[](std::size_t i) const { return parts[i]; }
};

/// f[S] as an eventually periodic set.
inline NSet image(const AlmostPerm& f, const NSet& S) {
  const std::size_t L = std::lcm(f.period(), S.period());
  const std::size_t B = AlmostPerm::round_up(std::max(f.window(), S.window()), L);
  const auto dmax = static_cast<std::size_t>(f.max_abs_displacement());

  std::size_t top = B + L + dmax;
  std::vector<std::uint64_t> pointwise;
  for (std::uint64_t n = 0; n < B; ++n) {
    if (!S.contains(n)) continue;
    if (const auto m = f(n)) {
      pointwise.push_back(*m);
      top = std::max<std::size_t>(top, *m + 1);
    }
  }
  const std::size_t W = AlmostPerm::round_up(top, L);
  std::vector<bool> member(W + L, false);
  for (const auto m : pointwise) member[m] = true;
  // Tail: n = B + s + jL maps to B + s + d(s) + jL.
  for (std::size_t s = 0; s < L; ++s) {
    const std::uint64_t n0 = B + s;
    if (!S.contains(n0)) continue;
    for (std::uint64_t m = *f(n0); m < W + L; m += L) member[m] = true;
  }
  return NSet::tabulate(L, W, [&](std::uint64_t m) { return member[m]; });
}

namespace detail {

struct TailColoring {
  std::size_t period = 1;               // P: every tail color depends on n mod P only
  std::vector<int> residue_color;       // per residue mod p; -1 fixed, -2 shifting class
  std::vector<std::int64_t> shift_step; // t = d / p for shifting classes

  int color(const AlmostPerm& f, std::uint64_t n) const {
    const std::size_t r = n % f.period();
    const int c = residue_color[r];
    if (c != -2) return c;
    const auto t = shift_step[r];
    const std::uint64_t u = (n - r) / f.period();
    const auto step = static_cast<std::uint64_t>(t > 0 ? t : -t);
    const auto k = static_cast<int>((u / step) % 3);
    return t > 0 ? k : (3 - k) % 3;
  }
};

inline TailColoring tail_coloring(const AlmostPerm& f) {
  const std::size_t p = f.period();
  TailColoring tc;
  tc.period = p;
  tc.residue_color.assign(p, -1);
  tc.shift_step.assign(p, 0);
  std::vector<bool> done(p, false);
  for (std::size_t r0 = 0; r0 < p; ++r0) {
    if (done[r0]) continue;
    std::vector<std::size_t> cycle;
    for (std::size_t r = r0; !done[r]; r = f.residue_image(r)) {
      done[r] = true;
      cycle.push_back(r);
    }
    const std::size_t m = cycle.size();
    if (m == 1) {
      const auto d = f.displacement()[r0];
      if (d != 0) {
        tc.residue_color[r0] = -2;
        tc.shift_step[r0] = d / static_cast<std::int64_t>(p);
        tc.period = std::lcm(tc.period, static_cast<std::size_t>(3 * (d > 0 ? d : -d)));
      }
      continue;
    }
    for (std::size_t j = 0; j < m; ++j) {
      int c = 0;
      if (m % 3 == 0) c = static_cast<int>(j % 3);
      else if (m % 2 == 0) c = static_cast<int>(j % 2);
      else c = j + 1 == m ? 2 : static_cast<int>(j % 2);
      tc.residue_color[cycle[j]] = c;
    }
  }
  return tc;
}

}  // namespace detail

inline KatetovParts katetov_decompose(const AlmostPerm& f) {
  const auto tc = detail::tail_coloring(f);
  const std::size_t P = tc.period;
  const std::size_t T = AlmostPerm::round_up(f.window(), P);

  auto moved = [&](std::uint64_t n) {
    const auto v = f(n);
    return !v || *v != n;
  };

  std::vector<int> color(T, -1);
  auto known = [&](std::optional<std::uint64_t> x) -> int {
    if (!x) return -1;
    if (*x >= T) return tc.color(f, *x);
    return color[*x];
  };
  auto pick = [&](std::uint64_t x) {
    const int a = known(f.preimage(x));
    const int b = known(f(x));
    for (int c = 0; c < 3; ++c)
      if (c != a && c != b) return c;
    return -1;  // unreachable: at most two neighbors
  };

  for (std::uint64_t x = 0; x < T; ++x) {
    if (color[x] != -1 || !moved(x)) continue;
    // Walk back to the start of the uncolored segment below T.
    std::uint64_t start = x;
    while (true) {
      const auto prev = f.preimage(start);
      if (!prev || *prev >= T || *prev == x || color[*prev] != -1) break;
      start = *prev;
    }
    for (std::uint64_t y = start;;) {
      color[y] = pick(y);
      const auto next = f(y);
      if (!next || *next >= T || color[*next] != -1) break;
      y = *next;
    }
  }

  KatetovParts out;
  for (int i = 0; i < 3; ++i) {
    out.parts[static_cast<std::size_t>(i)] = NSet::tabulate(P, T, [&](std::uint64_t n) {
      if (!moved(n)) return false;
      return (n < T ? color[n] : tc.color(f, n)) == i;
    });
  }
  return out;
}

struct PartsCheck {
  bool ok = true;
  std::string failure;  // first failed obligation, with a witness point where one exists
  explicit operator bool() const { return ok; }
};

namespace detail {
inline std::uint64_t first_member(const NSet& s) {
  for (std::uint64_t n = 0;; ++n)
    if (s.contains(n)) return n;
}
}  // namespace detail

/// Checks that the parts partition var_set(f) and that each is disjoint from its image.
inline PartsCheck verify_parts(const AlmostPerm& f, const KatetovParts& parts) {
  PartsCheck check;
  auto fail = [&](std::string message) {
    check.ok = false;
    check.failure = std::move(message);
    return check;
  };
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      const auto overlap = meet(parts[i], parts[j]);
      if (!(overlap == NSet::empty())) {
        return fail("E" + std::to_string(i) + " and E" + std::to_string(j) + " share " +
                    std::to_string(detail::first_member(overlap)));
      }
    }
  }
  const auto all = join(join(parts[0], parts[1]), parts[2]);
  const auto var = var_set(f);
  if (!(all == var)) {
    return fail("union differs from var(f) at " + std::to_string(detail::first_member(symmetric_difference(all, var))));
  }
  for (std::size_t i = 0; i < 3; ++i) {
    const auto clash = meet(image(f, parts[i]), parts[i]);
    if (!(clash == NSet::empty())) {
      const auto m = detail::first_member(clash);
      return fail("f[E" + std::to_string(i) + "] meets E" + std::to_string(i) + " at " + std::to_string(m) +
                  " = f(" + std::to_string(*f.preimage(m)) + ")");
    }
  }
  return check;
}

/// The stronger cyclic form f[E0] <= E1, f[E1] <= E2, f[E2] <= E0.
inline bool verify_cyclic(const AlmostPerm& f, const KatetovParts& parts) {
  for (std::size_t i = 0; i < 3; ++i)
    if (!leq(image(f, parts[i]), parts[(i + 1) % 3])) return false;
  return true;
}

}  // namespace autrecon
