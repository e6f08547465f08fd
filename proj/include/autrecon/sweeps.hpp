#pragma once

// Exhaustive invariant sweeps over a finite group. Each returns the number of
// cases examined, the number of violations, and the first offending case.

#include <cstdint>
#include <string>
#include <vector>

#include "autrecon/formulas.hpp"
#include "autrecon/group.hpp"
#include "autrecon/katetov.hpp"
#include "autrecon/reconstruct.hpp"

namespace autrecon {

struct SweepResult {
  std::string name;
  std::uint64_t cases = 0;
  std::uint64_t violations = 0;
  std::string first_violation;

  explicit operator bool() const { return violations == 0; }

  void fail(std::string what) {
    if (violations++ == 0) first_violation = std::move(what);
  }
};

inline std::string format_text(const SweepResult& r) {
  return "check name=" + r.name + " cases=" + std::to_string(r.cases) + " violations=" + std::to_string(r.violations) +
         (r.violations ? " first=\"" + r.first_violation + "\"" : std::string()) + "\n";
}

/// fix = -var, var(f^-1) = var(f), var(f^h) = h(var f), and var agrees with its supremum form.
/// Works on FinAut values directly, independent of the table's cached var masks.
inline SweepResult sweep_duality(const GroupTable& G) {
  SweepResult r{"duality_covariance"};
  const auto& els = G.elements();
  std::vector<FinElem> vars;
  for (const auto& f : els) {
    ++r.cases;
    const auto v = var(f);
    vars.push_back(v);
    if (!(fix(f) == complement(v))) r.fail("fix != -var for f=" + to_string(f));
    if (!(var(inverse(f)) == v)) r.fail("var(f^-1) != var(f) for f=" + to_string(f));
    if (!(var_supremum(f) == v)) r.fail("supremum var differs for f=" + to_string(f));
  }
  for (std::size_t i = 0; i < els.size(); ++i) {
    for (const auto& h : els) {
      ++r.cases;
      if (!(var(conjugate(els[i], h)) == apply(h, vars[i])))
        r.fail("var(f^h) != h(var f) for f=" + to_string(els[i]) + " h=" + to_string(h));
    }
  }
  return r;
}

/// Elements with disjoint supports commute.
inline SweepResult sweep_disjoint_commute(const GroupTable& G) {
  SweepResult r{"disjoint_commute"};
  const auto& els = G.elements();
  for (const auto& f : els) {
    const auto vf = var(f);
    for (const auto& g : els) {
      if (!disjoint(vf, var(g))) continue;
      ++r.cases;
      if (!(compose(f, g) == compose(g, f))) r.fail("f=" + to_string(f) + " g=" + to_string(g));
    }
  }
  return r;
}

/// sp(a) contains id and is closed under products and inverses, for every a.
inline SweepResult sweep_support_subgroups(const GroupTable& G) {
  SweepResult r{"support_subgroup"};
  const std::size_t n = G.universe_size();
  for (std::uint64_t m = 0; m <= FinElem::full_mask(n); ++m) {
    const FinElem a(n, m);
    ++r.cases;
    const auto members = sp(G, a);
    const auto in = ElementSet::of(G.size(), members);
    bool ok = in.contains(GroupTable::identity());
    for (const auto x : members) {
      if (!in.contains(G.inverse(x))) ok = false;
      for (const auto y : members)
        if (!in.contains(G.compose(x, y))) ok = false;
    }
    if (!ok) r.fail("a=" + to_string(a));
  }
  return r;
}

/// phi_le is a preorder, phi_eq an equivalence, every V-set a subgroup, and
/// phi_le(f, g) <=> phi_le(f^h, g^h) for all f, g, h.
inline std::vector<SweepResult> sweep_formula_laws(const FormulaEngine& engine) {
  const auto& G = engine.group();
  const std::size_t N = G.size();
  SweepResult pre{"phi_le_preorder"}, eq{"phi_eq_equivalence"}, sub{"v_set_subgroup"}, tr{"phi_le_transport"};

  for (std::size_t f = 0; f < N; ++f) {
    ++sub.cases;
    const auto& V = engine.v_set(f);
    bool ok = V.contains(GroupTable::identity());
    const auto members = V.indices();
    for (const auto x : members) {
      if (!V.contains(G.inverse(x))) ok = false;
      for (const auto y : members)
        if (!V.contains(G.compose(x, y))) ok = false;
    }
    if (!ok) sub.fail("f=" + to_string(G.element(f)));
  }

  for (std::size_t f = 0; f < N; ++f) {
    ++pre.cases;
    ++eq.cases;
    if (!engine.phi_le(f, f)) pre.fail("not reflexive at f=" + to_string(G.element(f)));
    if (!engine.phi_eq(f, f)) eq.fail("not reflexive at f=" + to_string(G.element(f)));
    for (std::size_t g = 0; g < N; ++g) {
      ++eq.cases;
      if (engine.phi_eq(f, g) != engine.phi_eq(g, f))
        eq.fail("not symmetric at f=" + to_string(G.element(f)) + " g=" + to_string(G.element(g)));
      const bool fg = engine.phi_le(f, g);
      const bool fg_eq = engine.phi_eq(f, g);
      for (std::size_t k = 0; k < N; ++k) {
        if (fg) {
          ++pre.cases;
          if (engine.phi_le(g, k) && !engine.phi_le(f, k))
            pre.fail("not transitive at f=" + to_string(G.element(f)) + " g=" + to_string(G.element(g)) +
                     " k=" + to_string(G.element(k)));
        }
        if (fg_eq) {
          ++eq.cases;
          if (engine.phi_eq(g, k) && !engine.phi_eq(f, k))
            eq.fail("not transitive at f=" + to_string(G.element(f)) + " g=" + to_string(G.element(g)) +
                    " k=" + to_string(G.element(k)));
        }
        ++tr.cases;
        // k plays the conjugator here.
        if (fg != engine.phi_le(G.conjugate(f, k), G.conjugate(g, k)))
          tr.fail("f=" + to_string(G.element(f)) + " g=" + to_string(G.element(g)) + " h=" + to_string(G.element(k)));
      }
    }
  }
  return {pre, eq, sub, tr};
}

/// f' in D1(f) <=> f'^h in D1(f^h). Cubic in |G| times the cost of phi1, so keep G small.
inline SweepResult sweep_d1_equivariance(const FormulaEngine& engine) {
  const auto& G = engine.group();
  SweepResult r{"d1_equivariance"};
  for (std::size_t f = 0; f < G.size(); ++f) {
    for (std::size_t fp = 0; fp < G.size(); ++fp) {
      const bool base = engine.phi1(f, fp);
      for (std::size_t h = 0; h < G.size(); ++h) {
        ++r.cases;
        if (base != engine.phi1(G.conjugate(f, h), G.conjugate(fp, h)))
          r.fail("f=" + to_string(G.element(f)) + " fp=" + to_string(G.element(fp)) + " h=" + to_string(G.element(h)));
      }
    }
  }
  return r;
}

/// For every inner automorphism: Theta is well defined, equals h on its domain,
/// has a domain closed under G, is injective and preserves maximal chains.
inline SweepResult sweep_inner_theta(const GroupTable& G, std::size_t workers = 1) {
  SweepResult r{"inner_theta"};
  for (std::size_t h = 0; h < G.size(); ++h) {
    ++r.cases;
    const auto& hh = G.element(h);
    const auto theta = build_theta(inner_automorphism(G, h), workers);
    const std::string tag = "h=" + to_string(hh) + ": ";
    if (!theta.well_defined) {
      r.fail(tag + "not well defined");
      continue;
    }
    bool ok = true;
    for (const auto& e : theta.entries) {
      if (!(*e.value == apply(hh, e.a))) {
        r.fail(tag + "Theta(" + to_string(e.a) + ") = " + to_string(*e.value));
        ok = false;
        break;
      }
      for (const auto& g : G.elements()) {
        if (!theta.find(apply(g, e.a))) {
          r.fail(tag + "domain not closed at " + to_string(e.a));
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    if (!ok) continue;
    if (const auto c = check_injective(theta); !c) r.fail(tag + c.failure);
    else if (const auto c2 = check_chains(theta); !c2) r.fail(tag + c2.failure);
  }
  return r;
}

/// Decomposes each perm and checks the parts and var = -fix.
inline SweepResult sweep_katetov(const std::vector<AlmostPerm>& perms) {
  SweepResult r{"katetov"};
  for (const auto& f : perms) {
    ++r.cases;
    if (!(var_set(f) == complement(fix_set(f)))) {
      r.fail("var != -fix for " + to_string(f));
      continue;
    }
    const auto check = verify_parts(f, katetov_decompose(f));
    if (!check) r.fail(to_string(f) + ": " + check.failure);
  }
  return r;
}

}  // namespace autrecon
