#include <gtest/gtest.h>

#include <random>

#include "autrecon/katetov.hpp"

using namespace autrecon;

namespace {

const NSet evens = NSet::residues(2, {0});
const NSet odds = NSet::residues(2, {1});

std::vector<AlmostPerm> random_perms(std::uint64_t seed, std::size_t count, RandomPermOptions opt = {200, 6}) {
  std::mt19937_64 rng(seed);
  std::vector<AlmostPerm> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_almost_perm(rng, opt));
  return out;
}

// Pointwise check of the three Katetov obligations up to `bound`.
bool parts_hold_pointwise(const AlmostPerm& f, const KatetovParts& p, std::uint64_t bound) {
  for (std::uint64_t n = 0; n < bound; ++n) {
    const auto v = f(n);
    const bool moved = !v || *v != n;
    int hits = 0, which = -1;
    for (int i = 0; i < 3; ++i)
      if (p[static_cast<std::size_t>(i)].contains(n)) ++hits, which = i;
    if (hits != (moved ? 1 : 0)) return false;
    if (moved && v && p[static_cast<std::size_t>(which)].contains(*v)) return false;
  }
  return true;
}

}  // namespace

TEST(AlmostPerm, FixAndVarExamples) {
  const AlmostPerm id;
  EXPECT_EQ(fix_set(id), NSet::naturals());
  EXPECT_EQ(var_set(id), NSet::empty());
  EXPECT_EQ(var_set(AlmostPerm::pair_swap()), NSet::naturals());
  const auto t = AlmostPerm::finite(FinAut::from_cycles(2, {{0, 1}}));
  EXPECT_EQ(var_set(t), NSet::finite({0, 1}));
  EXPECT_TRUE(is_zero_mod_fin(var_set(t)));
}

TEST(AlmostPerm, TextForms) {
  const auto f = parse_almost_perm("win:[(0 1)(4 7)];tail:p=2,d0=+0,d1=+0");
  EXPECT_EQ(var_set(f), NSet::finite({0, 1, 4, 7}));
  EXPECT_EQ(*f(4), 7u);
  EXPECT_EQ(parse_almost_perm(to_string(f)), f);
  const auto swap = AlmostPerm::pair_swap();
  EXPECT_EQ(parse_almost_perm(to_string(swap)), swap);
  for (const auto& g : random_perms(1, 50)) EXPECT_EQ(parse_almost_perm(to_string(g)), g);
}

TEST(AlmostPerm, RejectsInvalidInput) {
  EXPECT_THROW(parse_almost_perm("win:[];tail:p=2,d0=+0,d1=+1"), Error);  // 1 and 2 both map to 2
  EXPECT_THROW(parse_almost_perm("win:[];tail:p=1,d0=-1"), Error);        // 0 would map below zero
  EXPECT_THROW(parse_almost_perm("tail:p=1"), ParseError);
  EXPECT_THROW(AlmostPerm(0, {}, 0, {}), PreconditionError);
  EXPECT_THROW(AlmostPerm(2, {1, 1}, 1, {0}), Error);
}

TEST(AlmostPerm, ComposeAndInverseExamples) {
  for (const auto& f : random_perms(2, 100)) {
    EXPECT_TRUE(eq_mod_fin(compose(f, inverse(f)), AlmostPerm()));
    EXPECT_TRUE(eq_mod_fin(compose(inverse(f), f), AlmostPerm()));
  }
  const auto swap = AlmostPerm::pair_swap();
  EXPECT_TRUE(is_identity(compose(swap, swap)));
}

TEST(AlmostPerm, ShiftsComposeToDisplacementSum) {
  const AlmostPerm f(0, {}, 3, {+3, 0, +6});
  const AlmostPerm g(0, {}, 3, {+6, +3, 0});
  const auto fg = compose(f, g);
  for (std::uint64_t n = 0; n < 10'000; ++n) {
    const auto expected = g(n) ? f(*g(n)) : std::nullopt;
    ASSERT_EQ(fg(n), expected) << n;
    if (expected) {
      const std::int64_t sum = (n % 3 == 0 ? 9 : n % 3 == 1 ? 3 : 6);
      EXPECT_EQ(static_cast<std::int64_t>(*expected) - static_cast<std::int64_t>(n), sum);
    }
  }
}

TEST(AlmostPerm, ComposeAndInverseMatchPointwise) {
  const auto perms = random_perms(3, 60);
  for (std::size_t i = 0; i + 1 < perms.size(); ++i) {
    const auto& f = perms[i];
    const auto& g = perms[i + 1];
    const auto fg = compose(f, g);
    const auto fi = inverse(f);
    for (std::uint64_t n = 0; n < 2000; ++n) {
      const auto gn = g(n);
      ASSERT_EQ(fg(n), gn ? f(*gn) : std::nullopt);
      ASSERT_EQ(fi(n), f.preimage(n));
    }
    EXPECT_TRUE(leq(var_set(fg), join(var_set(f), var_set(g))));
    EXPECT_TRUE(leq_mod_fin(var_set(fg), join(var_set(f), var_set(g))));
    EXPECT_EQ(inverse(fi), f);
  }
}

TEST(AlmostPerm, EqModFinGivesFinitelyDifferentVarSets) {
  for (const auto& f : random_perms(4, 40)) {
    const auto g = compose(AlmostPerm::finite(FinAut::from_cycles(5, {{0, 3}, {1, 4, 2}})), f);
    ASSERT_TRUE(eq_mod_fin(f, g));
    EXPECT_TRUE(eq_mod_fin(var_set(f), var_set(g)));
  }
}

TEST(Katetov, IdentityHasEmptyParts) {
  const auto p = katetov_decompose(AlmostPerm());
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(p[i], NSet::empty());
}

TEST(Katetov, PairSwapSplitsEvensAndOdds) {
  const auto f = AlmostPerm::pair_swap();
  const auto p = katetov_decompose(f);
  EXPECT_EQ(p[0], evens);
  EXPECT_EQ(p[1], odds);
  EXPECT_EQ(p[2], NSet::empty());
  EXPECT_EQ(meet(image(f, p[0]), p[0]), NSet::empty());
  EXPECT_EQ(meet(image(f, p[1]), p[1]), NSet::empty());
  EXPECT_TRUE(verify_parts(f, p));
  EXPECT_FALSE(verify_cyclic(f, p));  // a 2-cycle cannot advance color by one each step
}

TEST(Katetov, ForwardShiftUsesPositionClasses) {
  const auto f = AlmostPerm::shift(3, 3);
  const auto p = katetov_decompose(f);
  for (std::uint64_t n = 0; n < 300; ++n) {
    const auto position = (n / 3) % 3;
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(p[i].contains(n), position == i) << n;
  }
  EXPECT_TRUE(verify_parts(f, p));
  EXPECT_TRUE(verify_cyclic(f, p));
}

TEST(Katetov, ImageMatchesPointwise) {
  for (const auto& f : random_perms(5, 30)) {
    const auto S = join(NSet::residues(3, {1}), NSet::finite({0, 4, 10}));
    const auto img = image(f, S);
    for (std::uint64_t m = 0; m < 1500; ++m) {
      const auto pre = f.preimage(m);
      EXPECT_EQ(img.contains(m), pre && S.contains(*pre)) << to_string(f) << " at " << m;
    }
  }
}

TEST(Katetov, RandomDecompositionsVerify) {
  for (const auto& f : random_perms(12345, 300)) {
    const auto p = katetov_decompose(f);
    const auto check = verify_parts(f, p);
    EXPECT_TRUE(check.ok) << to_string(f) << ": " << check.failure;
    EXPECT_EQ(var_set(f), complement(fix_set(f)));
    EXPECT_TRUE(parts_hold_pointwise(f, p, f.window() + 500));
    // Parts come out canonical: rebuilding from membership changes nothing.
    for (std::size_t i = 0; i < 3; ++i) {
      const auto& s = p[i];
      EXPECT_EQ(NSet::tabulate(s.period() * 2, s.window() + s.period(), [&](std::uint64_t n) { return s.contains(n); }),
                s);
      EXPECT_EQ(parse_nset(to_string(s)), s);
    }
  }
}

TEST(Katetov, LargeWindowsStayFast) {
  for (const auto& f : random_perms(99, 20, {10'000, 12})) EXPECT_TRUE(verify_parts(f, katetov_decompose(f)));
}

TEST(VerifyParts, RejectsOverlappingParts) {
  const auto f = AlmostPerm::pair_swap();
  const KatetovParts bad{{var_set(f), var_set(f), NSet::empty()}};
  const auto check = verify_parts(f, bad);
  EXPECT_FALSE(check);
  EXPECT_NE(check.failure.find("share 0"), std::string::npos) << check.failure;
}

TEST(VerifyParts, RejectsWrongThreeCycleColoring) {
  const auto f = AlmostPerm::finite(FinAut::from_cycles(3, {{0, 1, 2}}));
  const KatetovParts bad{{NSet::finite({0, 1}), NSet::finite({2}), NSet::empty()}};
  const auto check = verify_parts(f, bad);
  EXPECT_FALSE(check);
  EXPECT_NE(check.failure.find("f[E0] meets E0 at 1 = f(0)"), std::string::npos) << check.failure;
  EXPECT_TRUE(verify_parts(f, katetov_decompose(f)));
}

TEST(VerifyParts, RejectsIncompleteCover) {
  const auto f = AlmostPerm::pair_swap();
  const KatetovParts bad{{evens, NSet::empty(), NSet::empty()}};
  const auto check = verify_parts(f, bad);
  EXPECT_FALSE(check);
  EXPECT_NE(check.failure.find("union differs from var(f) at 1"), std::string::npos) << check.failure;
}
