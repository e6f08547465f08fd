#pragma once

// Finite automorphism groups of P(n) with a precomputed Cayley table, plus the
// support-bounded subsets Sp_G(a) / Sp*_G(a), centralizers and the
// locally-moving predicate.
//
// Elements are stored in lexicographic order of their atom images, so the
// identity is always element 0 and indices do not depend on the generators used.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "autrecon/perm.hpp"

namespace autrecon {

/// Default cap on group order (|S_7|).
inline constexpr std::size_t kDefaultGroupCap = 5040;
/// Hard limit: indices are stored as 16-bit values.
inline constexpr std::size_t kMaxGroupOrder = 65535;

/// Subset of a group's element indices, as a bitset.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::size_t universe) : size_(universe), words_((universe + 63) / 64, 0) {}

  template <class Range>
  static ElementSet of(std::size_t universe, const Range& indices) {
    ElementSet s(universe);
    for (const auto i : indices) s.insert(static_cast<std::size_t>(i));
    return s;
  }

  void insert(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool contains(std::size_t i) const { return ((words_[i / 64] >> (i % 64)) & 1U) != 0; }
  std::size_t universe() const { return size_; }
  std::size_t count() const {
    std::size_t c = 0;
    for (const auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool subset_of(const ElementSet& other) const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if ((words_[k] & ~other.words_[k]) != 0) return false;
    return true;
  }
  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < words_.size(); ++k)
      for (std::uint64_t w = words_[k]; w != 0; w &= w - 1)
        out.push_back(k * 64 + static_cast<std::size_t>(std::countr_zero(w)));
    return out;
  }

  friend bool operator==(const ElementSet&, const ElementSet&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

class GroupTable {
 public:
  /// Closure of the generators under composition (breadth-first). Throws
  /// CapExceeded as soon as more than `cap` elements have been found.
  static GroupTable generate(std::size_t universe_size, std::span<const FinAut> generators,
                             std::size_t cap = kDefaultGroupCap, std::string descriptor = {});

  std::size_t size() const { return elements_.size(); }
  std::size_t universe_size() const { return n_; }
  const std::string& descriptor() const { return descriptor_; }

  const FinAut& element(std::size_t i) const { return elements_[i]; }
  const std::vector<FinAut>& elements() const { return elements_; }

  /// Index of compose(element(i), element(j)).
  std::size_t compose(std::size_t i, std::size_t j) const { return table_[i * size() + j]; }
  std::size_t inverse(std::size_t i) const { return inverse_[i]; }
  static constexpr std::size_t identity() { return 0; }

  std::size_t conjugate(std::size_t f, std::size_t h) const { return compose(h, compose(f, inverse(h))); }
  std::size_t commutator(std::size_t f, std::size_t g) const {
    return compose(compose(f, g), compose(inverse(f), inverse(g)));
  }
  bool commute(std::size_t f, std::size_t g) const { return compose(f, g) == compose(g, f); }
  std::size_t power(std::size_t f, std::int64_t k) const {
    const std::size_t base = k < 0 ? inverse(f) : f;
    std::size_t result = identity();
    for (std::int64_t i = 0; i < (k < 0 ? -k : k); ++i) result = compose(base, result);
    return result;
  }
  std::size_t order(std::size_t i) const { return orders_[i]; }
  /// lcm of all element orders.
  std::size_t exponent() const { return exponent_; }

  std::uint64_t var_mask(std::size_t i) const { return var_masks_[i]; }
  FinElem var(std::size_t i) const { return FinElem(n_, var_masks_[i]); }

  std::optional<std::size_t> find(const FinAut& f) const {
    if (f.universe_size() != n_) return std::nullopt;
    const auto it = index_.find(encode(f));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t index_of(const FinAut& f) const {
    const auto i = find(f);
    if (!i) throw PreconditionError("permutation " + to_string(f) + " is not in group " + descriptor_);
    return *i;
  }

  std::vector<std::size_t> all() const {
    std::vector<std::size_t> out(size());
    std::iota(out.begin(), out.end(), std::size_t{0});
    return out;
  }

 private:
  static std::uint64_t encode(const FinAut& f) {
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < f.universe_size(); ++i) code |= static_cast<std::uint64_t>(f(i)) << (4 * i);
    return code;
  }

  std::size_t n_ = 0;
  std::string descriptor_;
  std::vector<FinAut> elements_;
  std::vector<std::uint16_t> table_;
  std::vector<std::uint16_t> inverse_;
  std::vector<std::uint64_t> var_masks_;
  std::vector<std::size_t> orders_;
  std::size_t exponent_ = 1;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

inline GroupTable GroupTable::generate(std::size_t universe_size, std::span<const FinAut> generators,
                                       std::size_t cap, std::string descriptor) {
  if (universe_size == 0 || universe_size > kDefaultAtomCap) {
    throw CapExceeded("group universe size " + std::to_string(universe_size) + " outside [1, " +
                      std::to_string(kDefaultAtomCap) + "]");
  }
  cap = std::min(cap, kMaxGroupOrder);
  for (const auto& g : generators) {
    if (g.universe_size() != universe_size) throw UniverseMismatch("generator over a different universe");
  }

  GroupTable G;
  G.n_ = universe_size;
  G.descriptor_ = std::move(descriptor);

  std::unordered_map<std::uint64_t, std::size_t> seen;
  std::vector<FinAut> found{FinAut::identity(universe_size)};
  seen.emplace(encode(found.front()), 0);
  for (std::size_t head = 0; head < found.size(); ++head) {
    for (const auto& g : generators) {
      auto next = autrecon::compose(found[head], g);
      if (seen.emplace(encode(next), found.size()).second) {
        found.push_back(std::move(next));
        if (found.size() > cap) {
          throw CapExceeded("group " + G.descriptor_ + " exceeds the size cap of " + std::to_string(cap));
        }
      }
    }
  }
  std::sort(found.begin(), found.end());
  G.elements_ = std::move(found);

  const std::size_t N = G.elements_.size();
  for (std::size_t i = 0; i < N; ++i) G.index_.emplace(encode(G.elements_[i]), i);

  // Products via the packed 4-bit image codes, which avoids allocating a FinAut per entry.
  std::vector<std::uint64_t> codes(N);
  for (std::size_t i = 0; i < N; ++i) codes[i] = encode(G.elements_[i]);
  G.table_.resize(N * N);
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) {
      std::uint64_t code = 0;
      for (std::size_t x = 0; x < universe_size; ++x) {
        const auto gx = (codes[j] >> (4 * x)) & 0xFU;
        const auto fgx = (codes[i] >> (4 * gx)) & 0xFU;
        code |= fgx << (4 * x);
      }
      G.table_[i * N + j] = static_cast<std::uint16_t>(G.index_.at(code));
    }
  }
  G.inverse_.resize(N);
  G.var_masks_.resize(N);
  G.orders_.resize(N);
  for (std::size_t i = 0; i < N; ++i) {
    G.inverse_[i] = static_cast<std::uint16_t>(G.index_.at(encode(autrecon::inverse(G.elements_[i]))));
    G.var_masks_[i] = autrecon::var(G.elements_[i]).mask();
    G.orders_[i] = autrecon::order(G.elements_[i]);
    G.exponent_ = std::lcm(G.exponent_, G.orders_[i]);
  }
  return G;
}

/// Sp_G(a): indices of g with var(g) <= a, ascending.
inline std::vector<std::size_t> sp(const GroupTable& G, const FinElem& a) {
  if (a.universe_size() != G.universe_size()) throw UniverseMismatch("sp: element over a different universe");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < G.size(); ++i)
    if ((G.var_mask(i) & ~a.mask()) == 0) out.push_back(i);
  return out;
}

/// Sp*_G(a): indices of g with var(g) = a, ascending. May be empty.
inline std::vector<std::size_t> sp_exact(const GroupTable& G, const FinElem& a) {
  if (a.universe_size() != G.universe_size()) throw UniverseMismatch("sp_exact: element over a different universe");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < G.size(); ++i)
    if (G.var_mask(i) == a.mask()) out.push_back(i);
  return out;
}

/// Z(S) scoped to G: indices of g commuting with every member of S, ascending.
inline std::vector<std::size_t> centralizer(const GroupTable& G, std::span<const std::size_t> members) {
  std::vector<std::size_t> out;
  for (std::size_t g = 0; g < G.size(); ++g) {
    const bool central = std::all_of(members.begin(), members.end(), [&](std::size_t s) { return G.commute(g, s); });
    if (central) out.push_back(g);
  }
  return out;
}

inline std::vector<std::size_t> centralizer(const GroupTable& G, std::size_t f) {
  return centralizer(G, std::span<const std::size_t>(&f, 1));
}

/// Centralizers memoized by the sorted, de-duplicated member list. Safe for
/// concurrent use; the group must outlive the cache.
class CentralizerCache {
 public:
  explicit CentralizerCache(const GroupTable& G) : group_(&G) {}

  const GroupTable& group() const { return *group_; }

  std::vector<std::size_t> get(std::vector<std::size_t> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    {
      std::lock_guard lock(mutex_);
      if (const auto it = memo_.find(members); it != memo_.end()) return it->second;
    }
    auto result = centralizer(*group_, members);
    std::lock_guard lock(mutex_);
    return memo_.emplace(std::move(members), std::move(result)).first->second;
  }

  std::size_t cached() const {
    std::lock_guard lock(mutex_);
    return memo_.size();
  }

 private:
  const GroupTable* group_;
  mutable std::mutex mutex_;
  std::map<std::vector<std::size_t>, std::vector<std::size_t>> memo_;
};

/// For every nonzero a there is a non-identity g in G with var(g) <= a.
/// The condition is monotone in a, so it is enough to test the atoms.
inline bool is_locally_moving(const GroupTable& G) {
  for (std::size_t atom = 0; atom < G.universe_size(); ++atom) {
    const std::uint64_t a = std::uint64_t{1} << atom;
    bool found = false;
    for (std::size_t g = 1; g < G.size() && !found; ++g) found = (G.var_mask(g) & ~a) == 0;
    if (!found) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Built-in groups and descriptors.

inline std::size_t factorial_capped(std::size_t n, std::size_t cap) {
  std::size_t r = 1;
  for (std::size_t k = 2; k <= n; ++k) {
    r *= k;
    if (r > cap) return cap + 1;
  }
  return r;
}

/// Symmetric group on n atoms.
inline GroupTable symmetric_group(std::size_t n, std::size_t cap = kDefaultGroupCap) {
  const std::string name = "sym:" + std::to_string(n);
  if (n == 0) throw PreconditionError("sym:0 has no atoms");
  if (n > kDefaultAtomCap || factorial_capped(n, cap) > cap) {
    throw CapExceeded("group " + name + " exceeds the size cap of " + std::to_string(cap));
  }
  std::vector<FinAut> gens;
  if (n >= 2) {
    gens.push_back(FinAut::from_cycles(n, {{0, 1}}));
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    gens.push_back(FinAut::from_cycles(n, {all}));
  }
  return GroupTable::generate(n, gens, cap, name);
}

/// Full automorphism group of the complete binary tree of the given depth,
/// acting on its 2^depth leaves (iterated wreath product of C_2; order 2^(2^depth - 1)).
inline GroupTable tree_group(std::size_t depth, std::size_t cap = kDefaultGroupCap) {
  const std::string name = "tree:" + std::to_string(depth);
  if (depth == 0 || depth > 4) throw CapExceeded("group " + name + " outside supported depths 1..4");
  const std::size_t leaves = std::size_t{1} << depth;
  const std::size_t nodes = leaves - 1;
  if (nodes >= 63 || (std::size_t{1} << nodes) > cap) {
    throw CapExceeded("group " + name + " exceeds the size cap of " + std::to_string(cap));
  }
  std::vector<FinAut> gens;
  // One generator per internal node: swap the two halves of the node's leaf block.
  for (std::size_t block = leaves; block >= 2; block /= 2) {
    for (std::size_t start = 0; start < leaves; start += block) {
      std::vector<std::vector<std::size_t>> swaps;
      for (std::size_t i = 0; i < block / 2; ++i) swaps.push_back({start + i, start + block / 2 + i});
      gens.push_back(FinAut::from_cycles(leaves, swaps));
    }
  }
  return GroupTable::generate(leaves, gens, cap, name);
}

/// Group from a descriptor: `sym:<n>`, `tree:<depth>`, `cyc:<n>`, `triv:<n>`, or
/// `gen:<cycles>;<cycles>;...` where each generator may carry an `@n` suffix
/// (the universe defaults to the largest point mentioned plus one).
inline GroupTable group_from_descriptor(std::string_view descriptor, std::size_t cap = kDefaultGroupCap) {
  auto s = detail::trim(descriptor);
  const std::string name(s);
  if (detail::consume(s, "sym:")) return symmetric_group(static_cast<std::size_t>(detail::parse_uint(s, name)), cap);
  if (detail::consume(s, "tree:")) return tree_group(static_cast<std::size_t>(detail::parse_uint(s, name)), cap);
  if (detail::consume(s, "cyc:") || detail::consume(s, "triv:")) {
    const bool cyclic = name.rfind("cyc:", 0) == 0;
    const auto n = static_cast<std::size_t>(detail::parse_uint(s, name));
    if (n == 0 || n > kDefaultAtomCap) throw CapExceeded("group " + name + " outside supported universe sizes");
    std::vector<FinAut> gens;
    if (cyclic && n >= 2) {
      std::vector<std::size_t> all(n);
      std::iota(all.begin(), all.end(), std::size_t{0});
      gens.push_back(FinAut::from_cycles(n, {all}));
    }
    return GroupTable::generate(n, gens, cap, name);
  }
  if (detail::consume(s, "gen:")) {
    std::vector<std::vector<std::vector<std::size_t>>> parsed;
    std::size_t n = 0;
    for (auto part : detail::split(s, ';')) {
      part = detail::trim(part);
      if (part.empty()) continue;
      auto rest = part;
      auto cs = detail::parse_cycle_list(rest);
      n = std::max(n, detail::max_point(cs));
      if (detail::consume(rest, "@")) {
        n = std::max(n, static_cast<std::size_t>(detail::parse_uint(rest, name)));
      } else if (!detail::trim(rest).empty()) {
        throw ParseError("bad generator '" + std::string(part) + "' in " + name);
      }
      parsed.push_back(std::move(cs));
    }
    if (n == 0) throw ParseError("descriptor " + name + " names no atoms");
    if (n > kDefaultAtomCap) throw CapExceeded("group " + name + " outside supported universe sizes");
    std::vector<FinAut> gens;
    for (const auto& cs : parsed) gens.push_back(FinAut::from_cycles(n, cs));
    return GroupTable::generate(n, gens, cap, name);
  }
  throw ParseError("unknown group descriptor '" + name + "'");
}

}  // namespace autrecon
