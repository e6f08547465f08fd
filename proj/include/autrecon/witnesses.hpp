#pragma once

// Witness finders and conformance checks for the support lemmas:
//   primo_a  a nonzero b <= a with b . (g_1(b) + ... + g_n(b)) = 0
//   primo_b  h in Sp_G(a) and b <= a with b, h(b), ..., h^n(b) pairwise disjoint
//   primo_c  h in Sp_G(a) with f^h not commuting with g
//   primo_d  k in Sp_G(a) not commuting with g
//   secondo  disjoint supports force phi1; overlap with var(f'^4) forbids it
//   terzo    sum_i f^{k_i}(b) is never below sum_i h_i(a)
//
// Every search is exhaustive at finite scale, so found = false is a certificate
// of nonexistence. Results are re-verified before they are returned.

#include <optional>
#include <string>
#include <vector>

#include "autrecon/detail/subsets.hpp"
#include "autrecon/formulas.hpp"
#include "autrecon/group.hpp"

namespace autrecon {

template <class Payload>
struct WitnessResult {
  bool found = false;
  std::optional<Payload> witness;
  std::uint64_t scanned = 0;
  /// Which search produced the witness, or why none exists.
  std::string reason;
};

enum class SearchOrder { smallest_first, largest_first };

namespace detail {
inline void require(bool condition, const std::string& message) {
  if (!condition) throw PreconditionError(message);
}

inline std::uint64_t image_mask(const FinAut& f, std::uint64_t mask) {
  std::uint64_t out = 0;
  for (std::uint64_t m = mask; m != 0; m &= m - 1) out |= std::uint64_t{1} << f(std::countr_zero(m));
  return out;
}

/// Greedy maximal c <= within with f(c) . c = 0, scanning atoms upward.
inline std::uint64_t greedy_separated(const FinAut& f, std::uint64_t within) {
  std::uint64_t c = 0;
  for (std::uint64_t m = within; m != 0; m &= m - 1) {
    const auto x = static_cast<std::size_t>(std::countr_zero(m));
    const auto bit = std::uint64_t{1} << x;
    const auto fx = std::uint64_t{1} << f(x);
    if (fx == bit) continue;
    if ((image_mask(f, c) & bit) != 0 || (c & fx) != 0) continue;
    c |= bit;
  }
  return c;
}

/// b, h(b), ..., h^n(b) pairwise disjoint (b given as a mask).
inline bool orbit_disjoint(const FinAut& h, std::uint64_t b, std::size_t n) {
  std::uint64_t seen = b;
  std::uint64_t cur = b;
  for (std::size_t i = 1; i <= n; ++i) {
    cur = image_mask(h, cur);
    if ((seen & cur) != 0) return false;
    seen |= cur;
  }
  return true;
}
}  // namespace detail

// --- primo_a ---------------------------------------------------------------

inline bool primo_a_holds(const std::vector<FinAut>& gs, const FinElem& b) {
  std::uint64_t images = 0;
  for (const auto& g : gs) images |= detail::image_mask(g, b.mask());
  return !b.is_zero() && (images & b.mask()) == 0;
}

inline WitnessResult<FinElem> primo_a(const std::vector<FinAut>& gs, const FinElem& a,
                                      SearchOrder order = SearchOrder::smallest_first) {
  detail::require(!a.is_zero(), "primo_a: a must be nonzero");
  detail::require(a.count() <= kDefaultAtomCap, "primo_a: a exceeds the atom cap");
  auto product = FinElem::full(a.universe_size());
  for (const auto& g : gs) {
    if (g.universe_size() != a.universe_size()) throw UniverseMismatch("primo_a: generator over a different universe");
    product = meet(product, var(g));
  }
  detail::require(leq(a, product), "primo_a: a must lie below the meet of the supports");

  WitnessResult<FinElem> result;
  detail::for_each_submask(a.mask(), order == SearchOrder::largest_first, [&](std::uint64_t b) {
    ++result.scanned;
    const FinElem candidate(a.universe_size(), b);
    if (!primo_a_holds(gs, candidate)) return false;
    result.found = true;
    result.witness = candidate;
    return true;
  });
  result.reason = result.found ? "exhaustive" : "no b <= a separated from its images";
  return result;
}

// --- primo_b ---------------------------------------------------------------

struct OrbitWitness {
  std::size_t h = 0;
  FinElem b;
};

inline bool primo_b_holds(const GroupTable& G, const FinElem& a, std::size_t n, const OrbitWitness& w) {
  return (G.var_mask(w.h) & ~a.mask()) == 0 && !w.b.is_zero() && leq(w.b, a) &&
         detail::orbit_disjoint(G.element(w.h), w.b.mask(), n);
}

namespace detail {
/// Inductive construction: keep a pair (h, b) with b, ..., h^m(b) disjoint; when
/// h^(m+1) moves part of b shrink b, otherwise compose with a k supported in b.
inline std::optional<OrbitWitness> primo_b_construct(const GroupTable& G, const FinElem& a, std::size_t n) {
  const auto candidates = sp(G, a);
  if (candidates.size() < 2) return std::nullopt;
  std::size_t h = candidates[1];
  std::uint64_t b = greedy_separated(G.element(h), a.mask());
  if (b == 0) return std::nullopt;
  for (std::size_t m = 1; m < n; ++m) {
    const auto hm = G.power(h, static_cast<std::int64_t>(m + 1));
    const auto moved = b & G.var_mask(hm);
    if (moved != 0) {
      b = greedy_separated(G.element(hm), moved);
    } else {
      const auto inside = sp(G, FinElem(G.universe_size(), b));
      if (inside.size() < 2) return std::nullopt;
      const auto k = inside[1];
      const auto c = greedy_separated(G.element(k), b);
      if (c == 0) return std::nullopt;
      h = G.compose(k, h);
      b = c;
    }
    if (b == 0 || !orbit_disjoint(G.element(h), b, m + 1)) return std::nullopt;
  }
  OrbitWitness w{h, FinElem(G.universe_size(), b)};
  if (!primo_b_holds(G, a, n, w)) return std::nullopt;
  return w;
}
}  // namespace detail

inline WitnessResult<OrbitWitness> primo_b(const GroupTable& G, const FinElem& a, std::size_t n) {
  detail::require(!a.is_zero(), "primo_b: a must be nonzero");
  detail::require(n >= 1, "primo_b: n must be positive");
  if (a.universe_size() != G.universe_size()) throw UniverseMismatch("primo_b: element over a different universe");

  WitnessResult<OrbitWitness> result;
  if (n >= G.exponent()) {
    result.reason = "order bound";
    return result;
  }
  if (auto w = detail::primo_b_construct(G, a, n)) {
    result.found = true;
    result.witness = *w;
    result.scanned = 1;
    result.reason = "construction";
    return result;
  }
  // Any witness b contains a singleton witness, so scanning atoms is exhaustive.
  for (const auto h : sp(G, a)) {
    for (const auto x : a.members()) {
      ++result.scanned;
      const auto b = FinElem::atom(a.universe_size(), x);
      if (detail::orbit_disjoint(G.element(h), b.mask(), n)) {
        result.found = true;
        result.witness = OrbitWitness{h, b};
        result.reason = "exhaustive";
        return result;
      }
    }
  }
  result.reason = "no element of Sp_G(a) has an orbit longer than n inside a";
  return result;
}

// --- primo_c / primo_d -------------------------------------------------------

inline WitnessResult<std::size_t> primo_c(const GroupTable& G, std::size_t f, std::size_t g, const FinElem& a) {
  if (a.universe_size() != G.universe_size()) throw UniverseMismatch("primo_c: element over a different universe");
  detail::require(!a.is_zero(), "primo_c: a must be nonzero");
  detail::require((a.mask() & ~(G.var_mask(f) & G.var_mask(g))) == 0, "primo_c: a must lie below var(f) . var(g)");

  WitnessResult<std::size_t> result;
  if (!G.commute(f, g)) {
    result.found = true;
    result.witness = GroupTable::identity();
    result.reason = "f and g already fail to commute";
    return result;
  }
  for (const auto h : sp(G, a)) {
    ++result.scanned;
    if (!G.commute(G.conjugate(f, h), g)) {
      result.found = true;
      result.witness = h;
      result.reason = "exhaustive";
      return result;
    }
  }
  result.reason = "every conjugate f^h with h in Sp_G(a) commutes with g";
  return result;
}

/// Tries the conjugation route through primo_c first (the k it returns cannot
/// commute with g), then a direct scan of Sp_G(a). `reason` names the route.
inline WitnessResult<std::size_t> primo_d(const GroupTable& G, std::size_t g, const FinElem& a) {
  if (a.universe_size() != G.universe_size()) throw UniverseMismatch("primo_d: element over a different universe");
  detail::require(!a.is_zero(), "primo_d: a must be nonzero");
  detail::require((a.mask() & ~G.var_mask(g)) == 0, "primo_d: a must lie below var(g)");

  auto via_c = primo_c(G, g, g, a);
  WitnessResult<std::size_t> result;
  result.scanned = via_c.scanned;
  if (via_c.found && !G.commute(*via_c.witness, g)) {
    result.found = true;
    result.witness = via_c.witness;
    result.reason = "via_c";
    return result;
  }
  for (const auto k : sp(G, a)) {
    ++result.scanned;
    if (!G.commute(k, g)) {
      result.found = true;
      result.witness = k;
      result.reason = "direct";
      return result;
    }
  }
  result.reason = "Sp_G(a) centralizes g";
  return result;
}

// --- secondo -----------------------------------------------------------------

enum class SecondoScope { disjoint, overlaps_fourth_power, neither };

inline const char* to_string(SecondoScope s) {
  switch (s) {
    case SecondoScope::disjoint: return "a";
    case SecondoScope::overlaps_fourth_power: return "b";
    case SecondoScope::neither: return "none";
  }
  return "?";
}

struct SecondoRecord {
  std::size_t f = 0;
  std::size_t fp = 0;
  SecondoScope scope = SecondoScope::neither;
  bool phi1 = false;
  /// phi1 matches the prediction; always true outside both scopes.
  bool conforms() const {
    switch (scope) {
      case SecondoScope::disjoint: return phi1;
      case SecondoScope::overlaps_fourth_power: return !phi1;
      case SecondoScope::neither: return true;
    }
    return true;
  }
};

struct SecondoReport {
  std::string group;
  std::size_t group_size = 0;
  std::vector<SecondoRecord> records;
  std::size_t in_a = 0, in_b = 0, in_neither = 0;
  std::size_t conform_a = 0, conform_b = 0;
};

inline SecondoScope secondo_scope(const GroupTable& G, std::size_t f, std::size_t fp) {
  if ((G.var_mask(f) & G.var_mask(fp)) == 0) return SecondoScope::disjoint;
  if ((G.var_mask(f) & G.var_mask(G.power(fp, kVSetPower))) != 0) return SecondoScope::overlaps_fourth_power;
  return SecondoScope::neither;
}

inline SecondoReport secondo_sweep(const GroupTable& G, std::size_t workers = 1) {
  const FormulaEngine engine(G);
  const std::size_t N = G.size();
  SecondoReport report;
  report.group = G.descriptor();
  report.group_size = N;
  report.records.resize(N * N);
  parallel_for(N, workers, [&](std::size_t f) {
    for (std::size_t fp = 0; fp < N; ++fp) {
      auto& r = report.records[f * N + fp];
      r.f = f;
      r.fp = fp;
      r.scope = secondo_scope(G, f, fp);
      r.phi1 = engine.phi1(f, fp);
    }
  });
  for (const auto& r : report.records) {
    switch (r.scope) {
      case SecondoScope::disjoint:
        ++report.in_a;
        report.conform_a += r.conforms() ? 1 : 0;
        break;
      case SecondoScope::overlaps_fourth_power:
        ++report.in_b;
        report.conform_b += r.conforms() ? 1 : 0;
        break;
      case SecondoScope::neither: ++report.in_neither; break;
    }
  }
  return report;
}

inline std::string format_text(const SecondoReport& r, std::uint64_t seed = 0) {
  std::string out;
  out.reserve(r.records.size() * 56 + 160);
  for (const auto& p : r.records) {
    out += "secondo f=" + std::to_string(p.f) + " fp=" + std::to_string(p.fp) + " scope=" + to_string(p.scope) +
           " phi1=" + (p.phi1 ? "1" : "0") + " conforms=" + (p.conforms() ? "1" : "0") + "\n";
  }
  out += "summary group=" + r.group + " size=" + std::to_string(r.group_size) +
         " pairs=" + std::to_string(r.records.size()) + " scope_a=" + std::to_string(r.in_a) +
         " conform_a=" + std::to_string(r.conform_a) + " scope_b=" + std::to_string(r.in_b) +
         " conform_b=" + std::to_string(r.conform_b) + " scope_none=" + std::to_string(r.in_neither) +
         " seed=" + std::to_string(seed) + "\n";
  return out;
}

inline std::string format_jsonl(const SecondoReport& r, std::uint64_t seed = 0) {
  std::string out;
  out.reserve(r.records.size() * 72 + 160);
  for (const auto& p : r.records) {
    out += "{\"type\":\"secondo\",\"f\":" + std::to_string(p.f) + ",\"fp\":" + std::to_string(p.fp) +
           ",\"scope\":\"" + to_string(p.scope) + "\",\"phi1\":" + (p.phi1 ? "1" : "0") +
           ",\"conforms\":" + (p.conforms() ? "1" : "0") + "}\n";
  }
  out += "{\"type\":\"summary\",\"group\":\"" + r.group + "\",\"size\":" + std::to_string(r.group_size) +
         ",\"pairs\":" + std::to_string(r.records.size()) + ",\"scope_a\":" + std::to_string(r.in_a) +
         ",\"conform_a\":" + std::to_string(r.conform_a) + ",\"scope_b\":" + std::to_string(r.in_b) +
         ",\"conform_b\":" + std::to_string(r.conform_b) + ",\"scope_none\":" + std::to_string(r.in_neither) +
         ",\"seed\":" + std::to_string(seed) + "}\n";
  return out;
}

// --- terzo -------------------------------------------------------------------

struct TerzoInstance {
  FinAut f;
  FinElem a;
  std::vector<std::int64_t> exponents;  // k_0 .. k_n
  std::vector<FinAut> family;           // h_1 .. h_n, each commuting with f
};

/// Throws PreconditionError unless the instance satisfies the lemma's hypotheses.
inline void validate(const TerzoInstance& inst) {
  detail::require(!inst.exponents.empty(), "terzo: at least one exponent is required");
  detail::require(inst.family.size() + 1 == inst.exponents.size(), "terzo: need exactly one h per exponent after k_0");
  if (inst.f.universe_size() != inst.a.universe_size()) throw UniverseMismatch("terzo: f and a over different universes");
  detail::require(inst.a.count() <= kDefaultAtomCap, "terzo: a exceeds the atom cap");
  std::uint64_t seen = 0;
  for (const auto k : inst.exponents) {
    const auto img = detail::image_mask(power(inst.f, k), inst.a.mask());
    detail::require((seen & img) == 0, "terzo: the images f^k_i(a) are not pairwise disjoint");
    seen |= img;
  }
  for (const auto& h : inst.family) {
    detail::check_same_universe(h, inst.f);
    detail::require(compose(h, inst.f) == compose(inst.f, h), "terzo: family member " + to_string(h) + " is not in Z(f)");
  }
}

/// Tests every nonzero b <= a; the witness is the first b with
/// sum_i f^{k_i}(b) <= sum_i h_i(a). The lemma predicts none.
inline WitnessResult<FinElem> terzo_check(const TerzoInstance& inst) {
  validate(inst);
  std::vector<FinAut> powers;
  for (const auto k : inst.exponents) powers.push_back(power(inst.f, k));
  std::uint64_t cover = 0;
  for (const auto& h : inst.family) cover |= detail::image_mask(h, inst.a.mask());

  WitnessResult<FinElem> result;
  detail::for_each_submask(inst.a.mask(), false, [&](std::uint64_t b) {
    ++result.scanned;
    std::uint64_t lhs = 0;
    for (const auto& p : powers) lhs |= detail::image_mask(p, b);
    if ((lhs & ~cover) != 0) return false;
    result.found = true;
    result.witness = FinElem(inst.a.universe_size(), b);
    return true;
  });
  result.reason = result.found ? "violation" : "no violation";
  return result;
}

struct TerzoSweepReport {
  std::string group;
  std::uint64_t instances = 0;
  std::uint64_t b_tested = 0;
  std::uint64_t violations = 0;
  std::vector<std::string> first_violations;  // at most 10, in enumeration order
};

/// Every valid instance over G: f in G, nonzero a, strictly increasing exponent
/// lists of length 1..max_terms drawn from [lo, hi], and non-decreasing families
/// drawn from Z(f).
inline TerzoSweepReport terzo_sweep(const GroupTable& G, std::size_t max_terms = 3, std::int64_t lo = -4,
                                    std::int64_t hi = 4, std::size_t workers = 1) {
  const std::size_t n = G.universe_size();
  const std::uint64_t full = FinElem::full_mask(n);
  std::vector<std::vector<std::int64_t>> exponent_lists;
  {
    std::vector<std::int64_t> cur;
    auto rec = [&](auto&& self, std::int64_t from) -> void {
      if (!cur.empty()) exponent_lists.push_back(cur);
      if (cur.size() == max_terms) return;
      for (std::int64_t k = from; k <= hi; ++k) {
        cur.push_back(k);
        self(self, k + 1);
        cur.pop_back();
      }
    };
    rec(rec, lo);
  }

  struct Partial {
    std::uint64_t instances = 0, b_tested = 0, violations = 0;
    std::vector<std::string> first;
  };
  std::vector<Partial> partial(G.size());
  parallel_for(G.size(), workers, [&](std::size_t f) {
    auto& out = partial[f];
    const auto z = centralizer(G, f);
    for (std::uint64_t a = 1; a <= full; ++a) {
      const FinElem a_elem(n, a);
      for (const auto& ks : exponent_lists) {
        std::uint64_t seen = 0;
        bool disjoint_images = true;
        for (const auto k : ks) {
          const auto img = detail::image_mask(G.element(G.power(f, k)), a);
          if ((seen & img) != 0) {
            disjoint_images = false;
            break;
          }
          seen |= img;
        }
        if (!disjoint_images) continue;
        // Non-decreasing tuples of centralizer positions, length |ks| - 1.
        const std::size_t m = ks.size() - 1;
        std::vector<std::size_t> pos(m, 0);
        while (true) {
          TerzoInstance inst{G.element(f), a_elem, ks, {}};
          for (const auto p : pos) inst.family.push_back(G.element(z[p]));
          const auto res = terzo_check(inst);
          ++out.instances;
          out.b_tested += res.scanned;
          if (res.found) {
            ++out.violations;
            if (out.first.size() < 10) {
              std::string line = "violation f=" + to_string(inst.f) + " a=" + to_string(a_elem) + " k=";
              for (std::size_t i = 0; i < ks.size(); ++i) line += (i ? "," : "") + std::to_string(ks[i]);
              line += " b=" + to_string(*res.witness);
              out.first.push_back(std::move(line));
            }
          }
          std::size_t i = m;
          while (i > 0 && pos[i - 1] == z.size() - 1) --i;
          if (i == 0) break;
          ++pos[i - 1];
          for (std::size_t j = i; j < m; ++j) pos[j] = pos[i - 1];
        }
      }
    }
  });

  TerzoSweepReport report;
  report.group = G.descriptor();
  for (const auto& p : partial) {
    report.instances += p.instances;
    report.b_tested += p.b_tested;
    report.violations += p.violations;
    for (const auto& line : p.first)
      if (report.first_violations.size() < 10) report.first_violations.push_back(line);
  }
  return report;
}

// --- text forms --------------------------------------------------------------

inline std::string format_witness(std::string_view lemma, bool found, const std::string& witness, std::uint64_t scanned,
                                  const std::string& reason) {
  return "lemma=" + std::string(lemma) + " found=" + (found ? "1" : "0") + " witness=" + (found ? witness : "-") +
         " scanned=" + std::to_string(scanned) + " reason=\"" + reason + "\"";
}

}  // namespace autrecon
