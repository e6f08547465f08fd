#pragma once

// Command-line front end. parse_args fills a RunConfig from flags and an
// optional `key = value` config file (flags win); run executes one command and
// returns the process exit status:
//   0  completed
//   1  an assertable invariant was violated, or the report differs from --golden
//   2  usage error: bad flags, unknown descriptor, cap exceeded, unwritable output

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "autrecon/autrecon.hpp"
#include "autrecon/sweeps.hpp"

namespace autrecon::cli {

inline const std::vector<std::string> kCommands = {"verify-minore", "secondo", "terzo", "witness",
                                                   "katetov",       "theta",   "sweep"};

struct RunConfig {
  std::string command;
  std::string group;
  std::string source;
  std::string target;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  std::string out;  // report prefix; empty writes the text report to stdout
  std::size_t cap = kDefaultGroupCap;
  std::string golden;

  // katetov
  std::size_t random = 0;
  std::vector<std::string> perms;
  // witness
  std::string lemma;
  std::string a, f, g, gs;
  std::size_t n = 0;
  std::string order = "smallest";
  // terzo
  std::size_t max_terms = 3;
  std::int64_t exp_lo = -4;
  std::int64_t exp_hi = 4;
  std::string k, h;
  // theta
  std::string iso = "search";
  std::size_t limit = 1;
};

/// Fills `config` from the command line. Returns an exit status when parsing
/// ends the run (help, or an error already reported on `err`).
inline std::optional<int> parse_args(int argc, const char* const* argv, RunConfig& config, std::ostream& out = std::cout,
                                     std::ostream& err = std::cerr) {
  CLI::App app{"Desk-scale verifier for support-based reconstruction of Boolean-algebra automorphism groups"};
  app.allow_config_extras(false);
  app.set_config("--config", "", "Read `key = value` lines; flags given on the command line take precedence");

  app.add_option("command", config.command, "One of: verify-minore secondo terzo witness katetov theta sweep")
      ->check(CLI::IsMember(kCommands));
  app.add_option("perms", config.perms, "katetov: almost-permutation descriptors");

  app.add_option("--group", config.group, "Group descriptor: sym:n, tree:k, cyc:n, triv:n, gen:...@n");
  app.add_option("--source", config.source, "theta: source group descriptor");
  app.add_option("--target", config.target, "theta: target group descriptor");
  app.add_option("--seed", config.seed, "Random seed, echoed in every report");
  app.add_option("--workers", config.workers, "Worker threads")->check(CLI::Range(std::size_t{1}, std::size_t{256}));
  app.add_option("--out", config.out, "Write <prefix>.txt and <prefix>.jsonl instead of printing");
  app.add_option("--cap", config.cap, "Largest group order to build")
      ->check(CLI::Range(std::size_t{1}, kMaxGroupOrder));
  app.add_option("--golden", config.golden, "Compare the text report byte for byte against this file");

  app.add_option("--random", config.random, "katetov/sweep: number of seeded random almost-permutations");
  app.add_option("--lemma", config.lemma, "witness: primo_a, primo_b, primo_c or primo_d")
      ->check(CLI::IsMember({"primo_a", "primo_b", "primo_c", "primo_d"}));
  app.add_option("--a", config.a, "Boolean-algebra element, e.g. {0,1}@4");
  app.add_option("--f", config.f, "Group element in cycle notation");
  app.add_option("--g", config.g, "Group element in cycle notation");
  app.add_option("--gs", config.gs, "primo_a: ';'-separated automorphisms");
  app.add_option("--n", config.n, "primo_b: orbit length");
  app.add_option("--order", config.order, "primo_a: search order")->check(CLI::IsMember({"smallest", "largest"}));
  app.add_option("--max-terms", config.max_terms, "terzo: longest exponent list");
  app.add_option("--exp-lo", config.exp_lo, "terzo: least exponent");
  app.add_option("--exp-hi", config.exp_hi, "terzo: greatest exponent");
  app.add_option("--exponents", config.k, "terzo: comma-separated exponents k_0,...,k_n");
  app.add_option("--family", config.h, "terzo: ';'-separated family h_1;...;h_n");
  app.add_option("--iso", config.iso, "theta: search, conj:<perm>, or a file of `<perm> -> <perm>` lines");
  app.add_option("--limit", config.limit, "theta: isomorphisms to take from the search");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }
  if (config.command.empty()) {
    err << "error: no command given (one of verify-minore secondo terzo witness katetov theta sweep)\n";
    return 2;
  }
  return std::nullopt;
}

// --- golden files ------------------------------------------------------------

struct GoldenDiff {
  bool same = true;
  std::size_t line = 0;  // first differing line, 1-based
  std::string expected;
  std::string actual;
};

inline GoldenDiff diff_golden_text(const std::string& report, const std::string& golden) {
  GoldenDiff d;
  if (report == golden) return d;
  d.same = false;
  std::istringstream r(report), g(golden);
  std::string rl, gl;
  for (std::size_t line = 1;; ++line) {
    const bool hr = static_cast<bool>(std::getline(r, rl));
    const bool hg = static_cast<bool>(std::getline(g, gl));
    if (!hr && !hg) {
      // Same lines, different trailing newline.
      d.line = line - 1;
      d.expected = "(trailing newline differs)";
      d.actual = d.expected;
      return d;
    }
    if (hr != hg || rl != gl) {
      d.line = line;
      d.expected = hg ? gl : "<end of file>";
      d.actual = hr ? rl : "<end of file>";
      return d;
    }
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Byte-exact comparison of two files. Throws Error when either is missing.
inline GoldenDiff diff_golden(const std::string& report_path, const std::string& golden_path) {
  return diff_golden_text(read_file(report_path), read_file(golden_path));
}

// --- run -----------------------------------------------------------------------

namespace detail {

struct UsageError : Error {
  using Error::Error;
};

struct Report {
  std::string text;
  std::string jsonl;
  bool violated = false;
};

inline std::string require_flag(const std::string& value, const char* flag, const std::string& command) {
  if (value.empty()) throw UsageError(command + " needs " + flag);
  return value;
}

inline GroupTable load_group(const std::string& desc, const char* flag, const RunConfig& c) {
  return group_from_descriptor(require_flag(desc, flag, c.command), c.cap);
}

inline std::size_t element_index(const GroupTable& G, const std::string& text, const char* flag) {
  const auto f = parse_fin_aut(text, G.universe_size());
  if (f.universe_size() != G.universe_size())
    throw UniverseMismatch(std::string(flag) + " " + text + " is not over " + std::to_string(G.universe_size()) + " atoms");
  const auto i = G.find(f);
  if (!i) throw UsageError(std::string(flag) + " " + text + " is not in " + G.descriptor());
  return *i;
}

inline FinElem element_of(const GroupTable& G, const std::string& text) {
  const auto a = parse_fin_elem(text);
  if (a.universe_size() != G.universe_size())
    throw UniverseMismatch("--a " + text + " is not over " + std::to_string(G.universe_size()) + " atoms");
  return a;
}

inline std::string line(const nlohmann::ordered_json& j) { return j.dump() + "\n"; }

inline Report run_minore(const RunConfig& c, std::ostream& err) {
  const auto G = load_group(c.group, "--group", c);
  const auto r = minore_report(G, c.workers);
  err << "verify-minore " << r.group << ": " << r.records.size() << " pairs, " << r.agree << " agree, " << r.phi_only
      << " phi only, " << r.var_only << " var only (" << r.wall_seconds << " s, " << c.workers << " workers)\n";
  return {format_text(r, c.seed), format_jsonl(r, c.seed), r.preorder_violations != 0};
}

inline Report run_secondo(const RunConfig& c, std::ostream& err) {
  const auto G = load_group(c.group, "--group", c);
  const auto start = std::chrono::steady_clock::now();
  const auto r = secondo_sweep(G, c.workers);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  err << "secondo " << r.group << ": scope a " << r.conform_a << "/" << r.in_a << " conform, scope b " << r.conform_b
      << "/" << r.in_b << " conform, " << r.in_neither << " outside both (" << secs << " s)\n";
  // Conformance is a finding at this scale, not an asserted invariant.
  return {format_text(r, c.seed), format_jsonl(r, c.seed), false};
}

inline std::vector<FinAut> parse_aut_list(const std::string& text, std::size_t n) {
  std::vector<FinAut> out;
  for (const auto& part : autrecon::detail::split(text, ';')) {
    const auto t = autrecon::detail::trim(part);
    if (!t.empty()) out.push_back(parse_fin_aut(t, n));
  }
  return out;
}

inline Report run_terzo(const RunConfig& c, std::ostream& err) {
  Report rep;
  if (!c.f.empty()) {
    const auto a = parse_fin_elem(require_flag(c.a, "--a", c.command));
    TerzoInstance inst{parse_fin_aut(c.f, a.universe_size()), a, {}, parse_aut_list(c.h, a.universe_size())};
    for (const auto& part : autrecon::detail::split(require_flag(c.k, "--exponents", c.command), ','))
      inst.exponents.push_back(autrecon::detail::parse_int(autrecon::detail::trim(part), "exponent"));
    const auto res = terzo_check(inst);
    const std::string w = res.witness ? to_string(*res.witness) : "-";
    rep.text = format_witness("terzo", res.found, w, res.scanned, res.reason) + " seed=" + std::to_string(c.seed) + "\n";
    rep.jsonl = line({{"type", "witness"}, {"lemma", "terzo"}, {"found", res.found ? 1 : 0}, {"witness", w},
                      {"scanned", res.scanned}, {"reason", res.reason}, {"seed", c.seed}});
    rep.violated = res.found;
    err << "terzo: " << (res.found ? "violation at b=" + w : "no violation") << " (" << res.scanned << " b tested)\n";
    return rep;
  }
  const auto G = load_group(c.group, "--group", c);
  if (c.exp_lo > c.exp_hi) throw UsageError("--exp-lo exceeds --exp-hi");
  const auto start = std::chrono::steady_clock::now();
  const auto r = terzo_sweep(G, c.max_terms, c.exp_lo, c.exp_hi, c.workers);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (const auto& v : r.first_violations) {
    rep.text += v + "\n";
    rep.jsonl += line({{"type", "violation"}, {"detail", v}});
  }
  rep.text += "summary group=" + r.group + " max_terms=" + std::to_string(c.max_terms) +
              " exp_lo=" + std::to_string(c.exp_lo) + " exp_hi=" + std::to_string(c.exp_hi) +
              " instances=" + std::to_string(r.instances) + " b_tested=" + std::to_string(r.b_tested) +
              " violations=" + std::to_string(r.violations) + " seed=" + std::to_string(c.seed) + "\n";
  rep.jsonl += line({{"type", "summary"},      {"group", r.group},         {"max_terms", c.max_terms},
                     {"exp_lo", c.exp_lo},     {"exp_hi", c.exp_hi},       {"instances", r.instances},
                     {"b_tested", r.b_tested}, {"violations", r.violations}, {"seed", c.seed}});
  rep.violated = r.violations != 0;
  err << "terzo " << r.group << ": " << r.instances << " instances, " << r.b_tested << " b tested, " << r.violations
      << " violations (" << secs << " s)\n";
  return rep;
}

inline Report run_witness(const RunConfig& c, std::ostream& err) {
  const auto lemma = require_flag(c.lemma, "--lemma", c.command);
  bool found = false, verified = true;
  std::string witness = "-", reason;
  std::uint64_t scanned = 0;

  if (lemma == "primo_a") {
    const auto a = parse_fin_elem(require_flag(c.a, "--a", c.command));
    const auto gs = parse_aut_list(require_flag(c.gs, "--gs", c.command), a.universe_size());
    const auto res = primo_a(gs, a, c.order == "largest" ? SearchOrder::largest_first : SearchOrder::smallest_first);
    found = res.found, scanned = res.scanned, reason = res.reason;
    if (found) {
      witness = to_string(*res.witness);
      verified = primo_a_holds(gs, *res.witness);
    }
  } else {
    const auto G = load_group(c.group, "--group", c);
    const auto a = element_of(G, require_flag(c.a, "--a", c.command));
    if (lemma == "primo_b") {
      if (c.n == 0) throw UsageError("primo_b needs --n >= 1");
      const auto res = primo_b(G, a, c.n);
      found = res.found, scanned = res.scanned, reason = res.reason;
      if (found) {
        witness = "h=" + to_string(G.element(res.witness->h)) + ";b=" + to_string(res.witness->b);
        verified = primo_b_holds(G, a, c.n, *res.witness);
      }
    } else if (lemma == "primo_c") {
      const auto f = element_index(G, require_flag(c.f, "--f", c.command), "--f");
      const auto g = element_index(G, require_flag(c.g, "--g", c.command), "--g");
      const auto res = primo_c(G, f, g, a);
      found = res.found, scanned = res.scanned, reason = res.reason;
      if (found) {
        witness = to_string(G.element(*res.witness));
        verified = !G.commute(G.conjugate(f, *res.witness), g);
      }
    } else {
      const auto g = element_index(G, require_flag(c.g, "--g", c.command), "--g");
      const auto res = primo_d(G, g, a);
      found = res.found, scanned = res.scanned, reason = res.reason;
      if (found) {
        witness = to_string(G.element(*res.witness));
        verified = !G.commute(*res.witness, g);
      }
    }
  }
  Report rep;
  rep.text = format_witness(lemma, found, witness, scanned, reason) + " seed=" + std::to_string(c.seed) + "\n";
  rep.jsonl = line({{"type", "witness"}, {"lemma", lemma}, {"found", found ? 1 : 0}, {"witness", witness},
                    {"scanned", scanned}, {"reason", reason}, {"seed", c.seed}});
  rep.violated = !verified;
  err << lemma << ": " << (found ? "witness " + witness : "none") << " after " << scanned << " candidates ("
      << reason << ")" << (verified ? "" : "; WITNESS FAILED RE-CHECK") << "\n";
  return rep;
}

inline Report run_katetov(const RunConfig& c, std::ostream& err) {
  std::vector<AlmostPerm> perms;
  for (const auto& d : c.perms) perms.push_back(parse_almost_perm(d));
  std::mt19937_64 rng(c.seed);
  for (std::size_t i = 0; i < c.random; ++i) perms.push_back(random_almost_perm(rng));
  if (perms.empty()) throw UsageError("katetov needs descriptors or --random n");

  Report rep;
  std::size_t verified = 0, cyclic = 0;
  for (std::size_t i = 0; i < perms.size(); ++i) {
    const auto& f = perms[i];
    const auto parts = katetov_decompose(f);
    const auto check = verify_parts(f, parts);
    const bool duality = var_set(f) == complement(fix_set(f));
    const bool cyc = verify_cyclic(f, parts);
    const bool ok = check.ok && duality;
    verified += ok ? 1 : 0;
    cyclic += cyc ? 1 : 0;
    rep.violated |= !ok;
    rep.text += "katetov index=" + std::to_string(i) + " f=" + to_string(f) + " E0=" + to_string(parts[0]) +
                " E1=" + to_string(parts[1]) + " E2=" + to_string(parts[2]) + " verified=" + (ok ? "1" : "0") +
                " cyclic=" + (cyc ? "1" : "0") + "\n";
    nlohmann::ordered_json j{{"type", "katetov"}, {"index", i},           {"f", to_string(f)},
                             {"E0", to_string(parts[0])}, {"E1", to_string(parts[1])}, {"E2", to_string(parts[2])},
                             {"verified", ok ? 1 : 0},    {"cyclic", cyc ? 1 : 0}};
    if (!ok) j["failure"] = duality ? check.failure : "var_set != complement(fix_set)";
    rep.jsonl += line(j);
    if (!ok) err << "katetov index " << i << ": " << (duality ? check.failure : "var != -fix") << "\n";
  }
  rep.text += "summary perms=" + std::to_string(perms.size()) + " verified=" + std::to_string(verified) +
              " cyclic=" + std::to_string(cyclic) + " seed=" + std::to_string(c.seed) + "\n";
  rep.jsonl += line({{"type", "summary"}, {"perms", perms.size()}, {"verified", verified}, {"cyclic", cyclic},
                     {"seed", c.seed}});
  err << "katetov: " << verified << "/" << perms.size() << " verified, " << cyclic << " cyclic\n";
  return rep;
}

inline GroupIso load_iso_file(const std::string& path, const GroupTable& S, const GroupTable& T) {
  GroupIso phi{&S, &T, std::vector<std::size_t>(S.size(), static_cast<std::size_t>(-1))};
  std::istringstream in(read_file(path));
  std::string raw;
  for (std::size_t no = 1; std::getline(in, raw); ++no) {
    const auto t = autrecon::detail::trim(raw);
    if (t.empty() || t.front() == '#') continue;
    const auto arrow = t.find("->");
    if (arrow == std::string_view::npos) throw ParseError(path + ":" + std::to_string(no) + ": expected `<perm> -> <perm>`");
    const auto from = element_index(S, std::string(autrecon::detail::trim(t.substr(0, arrow))), "source");
    const auto to = element_index(T, std::string(autrecon::detail::trim(t.substr(arrow + 2))), "target");
    phi.mapping[from] = to;
  }
  for (std::size_t i = 0; i < S.size(); ++i)
    if (phi.mapping[i] == static_cast<std::size_t>(-1))
      throw UsageError(path + ": no image for " + to_string(S.element(i)));
  return phi;
}

inline Report run_theta(const RunConfig& c, std::ostream& err) {
  const auto S = load_group(c.source, "--source", c);
  const auto T = load_group(c.target, "--target", c);
  std::vector<GroupIso> isos;
  if (c.iso == "search") {
    isos = find_isos(S, T, c.limit, c.cap);
  } else if (c.iso.rfind("conj:", 0) == 0) {
    if (S.descriptor() != T.descriptor()) throw UsageError("--iso conj: needs --source equal to --target");
    isos.push_back(inner_automorphism(S, element_index(S, c.iso.substr(5), "--iso")));
    isos.back().target = &T;
  } else {
    isos.push_back(load_iso_file(c.iso, S, T));
  }

  Report rep;
  std::size_t failures = 0;
  for (std::size_t k = 0; k < isos.size(); ++k) {
    const auto& phi = isos[k];
    if (const auto check = verify_iso(phi); !check) throw UsageError("--iso is not an isomorphism: " + check.failure);
    const auto theta = build_theta(phi, c.workers);
    rep.text += "iso index=" + std::to_string(k) + "\n" + format_text(theta);
    rep.jsonl += line({{"type", "iso"}, {"index", k}});
    for (const auto& e : theta.entries)
      rep.jsonl += line({{"type", "theta"}, {"a", to_string(e.a)}, {"theta", e.value ? to_string(*e.value) : "-"},
                         {"witnesses", e.witnesses}});
    std::string inj = "-", chains = "-", failure;
    if (theta.well_defined) {
      const auto ci = check_injective(theta);
      const auto cc = check_chains(theta);
      inj = ci.ok ? "1" : "0";
      chains = cc.ok ? "1" : "0";
      failure = !ci.ok ? ci.failure : cc.failure;
    } else {
      failure = "Theta is not well defined";
    }
    const bool ok = theta.well_defined && inj == "1" && chains == "1";
    failures += ok ? 0 : 1;
    rep.text += "check index=" + std::to_string(k) + " well_defined=" + (theta.well_defined ? "1" : "0") +
                " injective=" + inj + " chains=" + chains + "\n";
    rep.jsonl += line({{"type", "check"}, {"index", k}, {"well_defined", theta.well_defined ? 1 : 0},
                       {"injective", inj}, {"chains", chains}});
    if (!ok) err << "theta iso " << k << ": " << failure << "\n";
  }
  rep.text += "summary source=" + S.descriptor() + " target=" + T.descriptor() + " isos=" + std::to_string(isos.size()) +
              " failures=" + std::to_string(failures) + " seed=" + std::to_string(c.seed) + "\n";
  rep.jsonl += line({{"type", "summary"}, {"source", S.descriptor()}, {"target", T.descriptor()},
                     {"isos", isos.size()}, {"failures", failures}, {"seed", c.seed}});
  rep.violated = failures != 0;
  err << "theta " << S.descriptor() << " -> " << T.descriptor() << ": " << isos.size() << " isomorphisms, " << failures
      << " failing\n";
  return rep;
}

/// D1 equivariance costs |G|^3 phi1 evaluations; skipped above this order.
inline constexpr std::size_t kEquivarianceLimit = 48;

inline Report run_sweep(const RunConfig& c, std::ostream& err) {
  std::vector<SweepResult> results;
  if (!c.group.empty()) {
    const auto G = load_group(c.group, "--group", c);
    results.push_back(sweep_duality(G));
    results.push_back(sweep_disjoint_commute(G));
    results.push_back(sweep_support_subgroups(G));
    const FormulaEngine engine(G);
    engine.prepare(c.workers);
    for (auto& r : sweep_formula_laws(engine)) results.push_back(std::move(r));
    if (G.size() <= kEquivarianceLimit) results.push_back(sweep_d1_equivariance(engine));
    results.push_back(sweep_inner_theta(G, c.workers));
  }
  if (c.random > 0) {
    std::mt19937_64 rng(c.seed);
    std::vector<AlmostPerm> perms;
    for (std::size_t i = 0; i < c.random; ++i) perms.push_back(random_almost_perm(rng));
    results.push_back(sweep_katetov(perms));
  }
  if (results.empty()) throw UsageError("sweep needs --group and/or --random n");

  Report rep;
  std::uint64_t total = 0;
  for (const auto& r : results) {
    rep.text += format_text(r);
    nlohmann::ordered_json j{{"type", "check"}, {"name", r.name}, {"cases", r.cases}, {"violations", r.violations}};
    if (r.violations) j["first"] = r.first_violation;
    rep.jsonl += line(j);
    total += r.violations;
    err << "sweep " << r.name << ": " << r.cases << " cases, " << r.violations << " violations"
        << (r.violations ? " (first: " + r.first_violation + ")" : "") << "\n";
  }
  rep.text += "summary group=" + (c.group.empty() ? std::string("-") : c.group) + " random=" + std::to_string(c.random) +
              " checks=" + std::to_string(results.size()) + " violations=" + std::to_string(total) +
              " seed=" + std::to_string(c.seed) + "\n";
  rep.jsonl += line({{"type", "summary"}, {"group", c.group.empty() ? "-" : c.group}, {"random", c.random},
                     {"checks", results.size()}, {"violations", total}, {"seed", c.seed}});
  rep.violated = total != 0;
  return rep;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream o(path, std::ios::binary | std::ios::trunc);
  if (!o) throw UsageError("cannot write " + path);
  o << content;
  o.flush();
  if (!o) throw UsageError("cannot write " + path);
}

}  // namespace detail

inline int run(const RunConfig& c, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  detail::Report rep;
  try {
    if (c.cap == 0 || c.cap > kMaxGroupOrder)
      throw detail::UsageError("--cap must lie in [1, " + std::to_string(kMaxGroupOrder) + "]");
    if (c.workers == 0) throw detail::UsageError("--workers must be at least 1");
    if (c.command == "verify-minore") rep = detail::run_minore(c, err);
    else if (c.command == "secondo") rep = detail::run_secondo(c, err);
    else if (c.command == "terzo") rep = detail::run_terzo(c, err);
    else if (c.command == "witness") rep = detail::run_witness(c, err);
    else if (c.command == "katetov") rep = detail::run_katetov(c, err);
    else if (c.command == "theta") rep = detail::run_theta(c, err);
    else if (c.command == "sweep") rep = detail::run_sweep(c, err);
    else throw detail::UsageError("unknown command '" + c.command + "'");

    if (c.out.empty()) {
      out << rep.text;
    } else {
      detail::write_file(c.out + ".txt", rep.text);
      detail::write_file(c.out + ".jsonl", rep.jsonl);
    }
    if (!c.golden.empty()) {
      const auto d = diff_golden_text(rep.text, read_file(c.golden));
      if (!d.same) {
        err << "golden mismatch against " << c.golden << " at line " << d.line << "\n  expected: " << d.expected
            << "\n  actual:   " << d.actual << "\n";
        return 1;
      }
      err << "golden match: " << c.golden << "\n";
    }
  } catch (const CapExceeded& e) {
    err << "error: cap exceeded: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return rep.violated ? 1 : 0;
}

}  // namespace autrecon::cli
