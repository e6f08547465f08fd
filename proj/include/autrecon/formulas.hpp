#pragma once

// Exhaustive evaluation of the group-language formulas
//
//   phi1(f, f')  :=  forall g ([g,f] != id  ->
//                       exists f1, f2 in Z(f') ([g,f1,f2] != id  and  [[g,f1,f2], f'] = id))
//   D1(f)        :=  { f' : phi1(f, f') }
//   V(f)         :=  Z({ f'^4 : f' in D1(f) })
//   phi_le(f, g) :=  V(f) subset of V(g)
//   phi_eq(f, g) :=  phi_le(f, g) and phi_le(g, f)
//
// over a finite GroupTable. All quantifiers range over the group, centralizers
// included. Searches run in ascending element-index order.

#include <chrono>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "autrecon/group.hpp"
#include "autrecon/parallel.hpp"

namespace autrecon {

/// Exponent applied to members of D1(f) before taking the centralizer.
inline constexpr std::int64_t kVSetPower = 4;

class FormulaEngine {
 public:
  explicit FormulaEngine(const GroupTable& G) : G_(&G), vsets_(G.size()), vset_once_(G.size()) {
    const std::size_t N = G.size();
    centralizers_.resize(N);
    for (std::size_t f = 0; f < N; ++f) centralizers_[f] = centralizer(G, f);

    // closes_[fp][y]: some f2 in Z(fp) has t = [y, f2] != id with t in Z(fp).
    // phi1 then reduces to: every g outside Z(f) has some f1 in Z(fp) with closes_[fp][[g, f1]].
    closes_.assign(N, std::vector<bool>(N, false));
    for (std::size_t fp = 0; fp < N; ++fp) {
      const auto& z = centralizers_[fp];
      for (std::size_t y = 0; y < N; ++y) {
        for (const auto f2 : z) {
          const auto t = G.commutator(y, f2);
          if (t != GroupTable::identity() && G.commute(t, fp)) {
            closes_[fp][y] = true;
            break;
          }
        }
      }
    }
  }

  const GroupTable& group() const { return *G_; }

  /// Z(f) scoped to the group.
  const std::vector<std::size_t>& centralizer_of(std::size_t f) const { return centralizers_[f]; }

  bool phi1(std::size_t f, std::size_t fp) const {
    const auto& G = *G_;
    const auto& z = centralizers_[fp];
    const auto& closes = closes_[fp];
    for (std::size_t g = 0; g < G.size(); ++g) {
      if (G.commute(g, f)) continue;
      bool witnessed = false;
      for (const auto f1 : z) {
        if (closes[G.commutator(g, f1)]) {
          witnessed = true;
          break;
        }
      }
      if (!witnessed) return false;
    }
    return true;
  }

  std::vector<std::size_t> d1(std::size_t f) const {
    std::vector<std::size_t> out;
    for (std::size_t fp = 0; fp < G_->size(); ++fp)
      if (phi1(f, fp)) out.push_back(fp);
    return out;
  }

  /// V(f), memoized; thread safe.
  const ElementSet& v_set(std::size_t f) const {
    std::call_once(vset_once_[f], [&] { vsets_[f] = std::make_unique<ElementSet>(compute_v_set(f)); });
    return *vsets_[f];
  }

  bool phi_le(std::size_t f, std::size_t g) const { return v_set(f).subset_of(v_set(g)); }
  bool phi_eq(std::size_t f, std::size_t g) const { return phi_le(f, g) && phi_le(g, f); }

  /// Computes every V(f) up front, spread over `workers` threads.
  void prepare(std::size_t workers) const {
    parallel_for(G_->size(), workers, [&](std::size_t f) { (void)v_set(f); });
  }

 private:
  ElementSet compute_v_set(std::size_t f) const {
    const auto& G = *G_;
    std::vector<bool> is_power(G.size(), false);
    for (const auto fp : d1(f)) is_power[G.power(fp, kVSetPower)] = true;
    ElementSet out(G.size());
    for (std::size_t x = 0; x < G.size(); ++x) {
      bool central = true;
      for (std::size_t p = 0; p < G.size() && central; ++p)
        if (is_power[p]) central = G.commute(x, p);
      if (central) out.insert(x);
    }
    return out;
  }

  const GroupTable* G_;
  std::vector<std::vector<std::size_t>> centralizers_;
  std::vector<std::vector<bool>> closes_;
  mutable std::vector<std::unique_ptr<ElementSet>> vsets_;
  mutable std::vector<std::once_flag> vset_once_;
};

/// Free-function forms; each builds a throwaway engine, so prefer FormulaEngine for sweeps.
inline bool phi1(const GroupTable& G, std::size_t f, std::size_t fp) { return FormulaEngine(G).phi1(f, fp); }
inline std::vector<std::size_t> d1(const GroupTable& G, std::size_t f) { return FormulaEngine(G).d1(f); }
inline std::vector<std::size_t> v_set(const GroupTable& G, std::size_t f) { return FormulaEngine(G).v_set(f).indices(); }

struct PairRecord {
  std::size_t f = 0;
  std::size_t g = 0;
  bool phi_le = false;
  bool var_le = false;
  bool agree() const { return phi_le == var_le; }
};

/// phi_le against the support order for every ordered pair of group elements.
struct FormulaReport {
  std::string group;
  std::size_t group_size = 0;
  std::vector<PairRecord> records;
  std::size_t agree = 0;
  std::size_t phi_only = 0;  // phi_le holds, var_le fails
  std::size_t var_only = 0;  // var_le holds, phi_le fails
  std::size_t preorder_violations = 0;
  double wall_seconds = 0;
};

inline FormulaReport minore_report(const GroupTable& G, std::size_t workers = 1) {
  const auto start = std::chrono::steady_clock::now();
  FormulaEngine engine(G);
  engine.prepare(workers);

  const std::size_t N = G.size();
  FormulaReport report;
  report.group = G.descriptor();
  report.group_size = N;
  report.records.resize(N * N);
  parallel_for(N, workers, [&](std::size_t f) {
    for (std::size_t g = 0; g < N; ++g) {
      auto& r = report.records[f * N + g];
      r.f = f;
      r.g = g;
      r.phi_le = engine.phi_le(f, g);
      r.var_le = (G.var_mask(f) & ~G.var_mask(g)) == 0;
    }
  });
  for (const auto& r : report.records) {
    if (r.agree()) ++report.agree;
    else if (r.phi_le) ++report.phi_only;
    else ++report.var_only;
  }
  // phi_le is subset inclusion on V-sets, hence a preorder; a failure here means an engine bug.
  for (std::size_t f = 0; f < N; ++f) {
    if (!report.records[f * N + f].phi_le) ++report.preorder_violations;
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

inline std::string format_text(const FormulaReport& r, std::uint64_t seed = 0) {
  std::string out;
  out.reserve(r.records.size() * 48 + 128);
  for (const auto& p : r.records) {
    out += "pair f=" + std::to_string(p.f) + " g=" + std::to_string(p.g) + " phi_le=" + (p.phi_le ? "1" : "0") +
           " var_le=" + (p.var_le ? "1" : "0") + " agree=" + (p.agree() ? "1" : "0") + "\n";
  }
  out += "summary group=" + r.group + " size=" + std::to_string(r.group_size) +
         " pairs=" + std::to_string(r.records.size()) + " agree=" + std::to_string(r.agree) +
         " phi_only=" + std::to_string(r.phi_only) + " var_only=" + std::to_string(r.var_only) +
         " seed=" + std::to_string(seed) + "\n";
  return out;
}

inline std::string format_jsonl(const FormulaReport& r, std::uint64_t seed = 0) {
  std::string out;
  out.reserve(r.records.size() * 64 + 128);
  for (const auto& p : r.records) {
    out += "{\"type\":\"pair\",\"f\":" + std::to_string(p.f) + ",\"g\":" + std::to_string(p.g) +
           ",\"phi_le\":" + (p.phi_le ? "1" : "0") + ",\"var_le\":" + (p.var_le ? "1" : "0") +
           ",\"agree\":" + (p.agree() ? "1" : "0") + "}\n";
  }
  out += "{\"type\":\"summary\",\"group\":\"" + r.group + "\",\"size\":" + std::to_string(r.group_size) +
         ",\"pairs\":" + std::to_string(r.records.size()) + ",\"agree\":" + std::to_string(r.agree) +
         ",\"phi_only\":" + std::to_string(r.phi_only) + ",\"var_only\":" + std::to_string(r.var_only) +
         ",\"seed\":" + std::to_string(seed) + "}\n";
  return out;
}

}  // namespace autrecon
