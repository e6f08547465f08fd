#pragma once

// The algebra map induced by a group isomorphism: for a with Sp*(a) nonempty,
// Theta(a) = var(Phi(f)) for f with var(f) = a. Theta is partial at finite scale
// (atoms never occur as supports), well-defined only if every f in Sp*(a) gives
// the same value, and is checked for injectivity and chain preservation.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "autrecon/group.hpp"
#include "autrecon/parallel.hpp"

namespace autrecon {

struct GroupIso {
  const GroupTable* source = nullptr;
  const GroupTable* target = nullptr;
  std::vector<std::size_t> mapping;  // source index -> target index
};

struct IsoCheck {
  bool ok = true;
  std::string failure;
  explicit operator bool() const { return ok; }
};

/// Full |G|^2 homomorphism check plus bijectivity. Throws on a size mismatch.
inline IsoCheck verify_iso(const GroupIso& phi) {
  const auto& S = *phi.source;
  const auto& T = *phi.target;
  if (S.size() != T.size() || phi.mapping.size() != S.size()) {
    throw PreconditionError("verify_iso: size mismatch (" + std::to_string(S.size()) + ", " +
                            std::to_string(T.size()) + ", mapping " + std::to_string(phi.mapping.size()) + ")");
  }
  IsoCheck check;
  std::vector<bool> hit(T.size(), false);
  for (std::size_t i = 0; i < S.size(); ++i) {
    const auto j = phi.mapping[i];
    if (j >= T.size() || hit[j]) {
      check.ok = false;
      check.failure = "not a bijection at source element " + std::to_string(i);
      return check;
    }
    hit[j] = true;
  }
  for (std::size_t f = 0; f < S.size(); ++f) {
    for (std::size_t g = 0; g < S.size(); ++g) {
      if (phi.mapping[S.compose(f, g)] != T.compose(phi.mapping[f], phi.mapping[g])) {
        check.ok = false;
        check.failure = "Phi(fg) != Phi(f)Phi(g) at f=" + std::to_string(f) + " g=" + std::to_string(g);
        return check;
      }
    }
  }
  return check;
}

/// Conjugation by h inside a single group: f -> h f h^-1.
inline GroupIso inner_automorphism(const GroupTable& G, std::size_t h) {
  GroupIso phi{&G, &G, std::vector<std::size_t>(G.size())};
  for (std::size_t f = 0; f < G.size(); ++f) phi.mapping[f] = G.conjugate(f, h);
  return phi;
}

struct ThetaEntry {
  FinElem a;
  std::optional<FinElem> value;  // set when every witness agrees
  std::size_t witnesses = 0;     // |Sp*(a)|
  std::size_t distinct_values = 0;
};

struct ThetaMap {
  std::vector<ThetaEntry> entries;  // domain, ordered by cardinality then members
  bool well_defined = true;
  std::size_t source_universe = 0;
  std::size_t target_universe = 0;

  const ThetaEntry* find(const FinElem& a) const {
    for (const auto& e : entries)
      if (e.a == a) return &e;
    return nullptr;
  }
};

namespace detail {
/// Cardinality, then lexicographic order on the sorted member list.
inline bool elem_order(const FinElem& x, const FinElem& y) {
  if (x.count() != y.count()) return x.count() < y.count();
  return x.members() < y.members();
}
}  // namespace detail

inline ThetaMap build_theta(const GroupIso& phi, std::size_t workers = 1) {
  const auto& S = *phi.source;
  const auto& T = *phi.target;
  std::map<std::uint64_t, std::vector<std::size_t>> by_support;
  for (std::size_t f = 0; f < S.size(); ++f) by_support[S.var_mask(f)].push_back(f);

  ThetaMap theta;
  theta.source_universe = S.universe_size();
  theta.target_universe = T.universe_size();
  for (const auto& [mask, _] : by_support) theta.entries.push_back({FinElem(S.universe_size(), mask), std::nullopt, 0, 0});
  std::sort(theta.entries.begin(), theta.entries.end(),
            [](const ThetaEntry& x, const ThetaEntry& y) { return detail::elem_order(x.a, y.a); });

  parallel_for(theta.entries.size(), workers, [&](std::size_t k) {
    auto& e = theta.entries[k];
    const auto& members = by_support.at(e.a.mask());
    std::set<std::uint64_t> values;
    for (const auto f : members) values.insert(T.var_mask(phi.mapping[f]));
    e.witnesses = members.size();
    e.distinct_values = values.size();
    if (values.size() == 1) e.value = FinElem(T.universe_size(), *values.begin());
  });
  theta.well_defined = std::all_of(theta.entries.begin(), theta.entries.end(),
                                   [](const ThetaEntry& e) { return e.value.has_value(); });
  return theta;
}

struct ThetaCheck {
  bool ok = true;
  std::string failure;
  std::uint64_t chains_checked = 0;
  explicit operator bool() const { return ok; }
};

namespace detail {
inline void require_well_defined(const ThetaMap& theta, const char* who) {
  if (!theta.well_defined) throw PreconditionError(std::string(who) + ": Theta is not well defined");
}
}  // namespace detail

inline ThetaCheck check_injective(const ThetaMap& theta) {
  detail::require_well_defined(theta, "check_injective");
  ThetaCheck check;
  std::map<std::uint64_t, const FinElem*> seen;
  for (const auto& e : theta.entries) {
    const auto [it, fresh] = seen.emplace(e.value->mask(), &e.a);
    if (!fresh) {
      check.ok = false;
      check.failure = "Theta(" + to_string(*it->second) + ") = Theta(" + to_string(e.a) + ") = " + to_string(*e.value);
      return check;
    }
  }
  return check;
}

/// Walks every maximal chain of the source algebra (one per ordering of the
/// atoms), keeps its domain elements, and requires their Theta values to form
/// a strictly increasing chain of the same length. Above 10 atoms the
/// equivalent pairwise test (a < b in the domain implies Theta(a) < Theta(b))
/// is used instead of enumerating n! chains.
inline ThetaCheck check_chains(const ThetaMap& theta) {
  detail::require_well_defined(theta, "check_chains");
  ThetaCheck check;
  const std::size_t n = theta.source_universe;
  const std::size_t m = theta.target_universe;
  // Theta by source mask; -1 outside the domain. Dense when n is small.
  std::map<std::uint64_t, std::uint64_t> sparse;
  std::vector<std::int64_t> dense(n <= 16 ? (std::size_t{1} << n) : 0, -1);
  for (const auto& e : theta.entries) {
    if (n <= 16) dense[e.a.mask()] = static_cast<std::int64_t>(e.value->mask());
    else sparse.emplace(e.a.mask(), e.value->mask());
  }
  auto lookup = [&](std::uint64_t a) -> std::int64_t {
    if (n <= 16) return dense[a];
    const auto it = sparse.find(a);
    return it == sparse.end() ? -1 : static_cast<std::int64_t>(it->second);
  };
  auto strictly_below = [](std::uint64_t x, std::uint64_t y) { return x != y && (x & ~y) == 0; };
  auto report = [&](std::uint64_t lo, std::uint64_t hi) {
    check.ok = false;
    check.failure = to_string(FinElem(n, lo)) + " < " + to_string(FinElem(n, hi)) + " but Theta gives " +
                    to_string(FinElem(m, static_cast<std::uint64_t>(lookup(lo)))) + " and " +
                    to_string(FinElem(m, static_cast<std::uint64_t>(lookup(hi))));
  };

  if (n <= 10) {
    std::vector<std::size_t> atoms(n);
    std::iota(atoms.begin(), atoms.end(), std::size_t{0});
    do {
      ++check.chains_checked;
      std::optional<std::uint64_t> prev;
      std::uint64_t cur = 0;
      for (std::size_t step = 0; step <= n; ++step) {
        if (step > 0) cur |= std::uint64_t{1} << atoms[step - 1];
        const auto v = lookup(cur);
        if (v < 0) continue;
        if (prev && !strictly_below(static_cast<std::uint64_t>(lookup(*prev)), static_cast<std::uint64_t>(v))) {
          report(*prev, cur);
          return check;
        }
        prev = cur;
      }
    } while (std::next_permutation(atoms.begin(), atoms.end()));
    return check;
  }
  for (const auto& ea : theta.entries) {
    for (const auto& eb : theta.entries) {
      if (strictly_below(ea.a.mask(), eb.a.mask()) && !strictly_below(ea.value->mask(), eb.value->mask())) {
        report(ea.a.mask(), eb.a.mask());
        return check;
      }
    }
  }
  return check;
}

inline std::string format_text(const ThetaMap& theta) {
  std::string out;
  for (const auto& e : theta.entries) {
    out += "a=" + to_string(e.a) + " theta=" + (e.value ? to_string(*e.value) : std::string("-")) +
           " witnesses=" + std::to_string(e.witnesses) + "\n";
  }
  return out;
}

// --- isomorphism search --------------------------------------------------------

namespace detail {

inline std::vector<std::size_t> conjugacy_class_sizes(const GroupTable& G) {
  std::vector<std::size_t> size_of(G.size(), 0);
  std::vector<bool> done(G.size(), false);
  for (std::size_t f = 0; f < G.size(); ++f) {
    if (done[f]) continue;
    std::vector<std::size_t> cls;
    for (std::size_t h = 0; h < G.size(); ++h) {
      const auto c = G.conjugate(f, h);
      if (!done[c]) {
        done[c] = true;
        cls.push_back(c);
      }
    }
    for (const auto c : cls) size_of[c] = cls.size();
  }
  return size_of;
}

/// Greedy generating set: elements in index order that are not yet generated.
inline std::vector<std::size_t> generating_set(const GroupTable& G) {
  std::vector<std::size_t> gens;
  std::vector<bool> in(G.size(), false);
  in[GroupTable::identity()] = true;
  for (std::size_t x = 0; x < G.size(); ++x) {
    if (in[x]) continue;
    gens.push_back(x);
    std::fill(in.begin(), in.end(), false);
    in[GroupTable::identity()] = true;
    std::vector<std::size_t> members{GroupTable::identity()};
    for (std::size_t head = 0; head < members.size(); ++head) {
      for (const auto g : gens) {
        const auto y = G.compose(members[head], g);
        if (!in[y]) {
          in[y] = true;
          members.push_back(y);
        }
      }
    }
  }
  return gens;
}

/// Extends the generator images to the subgroup they generate; empty if the
/// assignment is inconsistent or not injective.
inline std::vector<std::size_t> extend(const GroupTable& S, const GroupTable& T, const std::vector<std::size_t>& gens,
                                       const std::vector<std::size_t>& images) {
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> map(S.size(), unset);
  std::vector<bool> used(T.size(), false);
  map[GroupTable::identity()] = GroupTable::identity();
  used[GroupTable::identity()] = true;
  std::vector<std::size_t> queue{GroupTable::identity()};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto x = queue[head];
    for (std::size_t k = 0; k < images.size(); ++k) {
      const auto y = S.compose(x, gens[k]);
      const auto ty = T.compose(map[x], images[k]);
      if (map[y] == unset) {
        if (used[ty]) return {};
        map[y] = ty;
        used[ty] = true;
        queue.push_back(y);
      } else if (map[y] != ty) {
        return {};
      }
    }
  }
  return map;
}

}  // namespace detail

/// Isomorphisms source -> target by backtracking over images of a greedy
/// generating set, pruned by element order and conjugacy-class size. Results
/// come in lexicographic order of generator images; at most `limit` are returned.
inline std::vector<GroupIso> find_isos(const GroupTable& source, const GroupTable& target, std::size_t limit,
                                       std::size_t cap = kDefaultGroupCap) {
  if (source.size() > cap || target.size() > cap) throw CapExceeded("find_isos: group order over the cap");
  std::vector<GroupIso> out;
  if (source.size() != target.size() || limit == 0) return out;

  const auto s_cls = detail::conjugacy_class_sizes(source);
  const auto t_cls = detail::conjugacy_class_sizes(target);
  auto profile = [](const GroupTable& G, const std::vector<std::size_t>& cls) {
    std::vector<std::pair<std::size_t, std::size_t>> p;
    for (std::size_t i = 0; i < G.size(); ++i) p.emplace_back(G.order(i), cls[i]);
    std::sort(p.begin(), p.end());
    return p;
  };
  if (profile(source, s_cls) != profile(target, t_cls)) return out;

  const auto gens = detail::generating_set(source);
  std::vector<std::size_t> images;
  auto rec = [&](auto&& self) -> void {
    if (out.size() >= limit) return;
    if (images.size() == gens.size()) {
      auto map = detail::extend(source, target, gens, images);
      if (map.empty() || std::count(map.begin(), map.end(), static_cast<std::size_t>(-1)) != 0) return;
      GroupIso phi{&source, &target, std::move(map)};
      if (verify_iso(phi)) out.push_back(std::move(phi));
      return;
    }
    const auto g = gens[images.size()];
    for (std::size_t t = 0; t < target.size() && out.size() < limit; ++t) {
      if (target.order(t) != source.order(g) || t_cls[t] != s_cls[g]) continue;
      images.push_back(t);
      const std::vector<std::size_t> prefix(gens.begin(), gens.begin() + static_cast<std::ptrdiff_t>(images.size()));
      if (!detail::extend(source, target, prefix, images).empty()) self(self);
      images.pop_back();
    }
  };
  rec(rec);
  return out;
}

}  // namespace autrecon
