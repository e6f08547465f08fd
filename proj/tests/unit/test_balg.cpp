#include <gtest/gtest.h>

#include <random>
#include <set>

#include "autrecon/balg.hpp"
#include "autrecon/error.hpp"

using namespace autrecon;

namespace {

// Membership up to `bound` as a plain std::set, the oracle for NSet algebra.
std::set<std::uint64_t> members_below(const NSet& s, std::uint64_t bound) {
  std::set<std::uint64_t> out;
  for (std::uint64_t n = 0; n < bound; ++n)
    if (s.contains(n)) out.insert(n);
  return out;
}

NSet random_nset(std::mt19937& rng) {
  const std::size_t p = 1 + rng() % 6;
  const std::size_t w = (rng() % 30) / p * p;
  std::vector<bool> tail(p), expl(w);
  for (std::size_t i = 0; i < p; ++i) tail[i] = rng() % 2;
  for (std::size_t i = 0; i < w; ++i) expl[i] = rng() % 2;
  return NSet(p, tail, w, expl);
}

const NSet evens = NSet::residues(2, {0});
const NSet odds = NSet::residues(2, {1});

}  // namespace

TEST(FinElem, MeetOfOverlappingPairs) {
  EXPECT_EQ(meet(FinElem::of(3, {0, 1}), FinElem::of(3, {1, 2})), FinElem::of(3, {1}));
}

TEST(FinElem, ComplementOfEmptyIsFull) {
  for (std::size_t n = 1; n <= 16; ++n) EXPECT_EQ(complement(FinElem::empty(n)), FinElem::full(n));
}

TEST(FinElem, TextRoundTrip) {
  const auto a = FinElem::of(4, {0, 2, 3});
  EXPECT_EQ(to_string(a), "{0,2,3}@4");
  EXPECT_EQ(parse_fin_elem("{0,2,3}@4"), a);
  EXPECT_EQ(parse_fin_elem(" {}@5 "), FinElem::empty(5));
}

TEST(FinElem, RejectsBadInput) {
  EXPECT_THROW(parse_fin_elem("{0,4}@4"), Error);
  EXPECT_THROW(parse_fin_elem("{0,1"), ParseError);
  EXPECT_THROW(parse_fin_elem("{0}@"), ParseError);
  EXPECT_THROW(FinElem::of(65, {0}), Error);
  EXPECT_THROW(meet(FinElem::empty(3), FinElem::empty(4)), UniverseMismatch);
}

TEST(FinElem, LawsOnRandomElements) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 1 + rng() % 12;
    const auto full = FinElem::full_mask(n);
    const FinElem a(n, rng() & full), b(n, rng() & full), c(n, rng() & full);
    EXPECT_EQ(complement(meet(a, b)), join(complement(a), complement(b)));
    EXPECT_EQ(complement(join(a, b)), meet(complement(a), complement(b)));
    EXPECT_EQ(join(a, meet(a, b)), a);
    EXPECT_EQ(meet(a, join(a, b)), a);
    EXPECT_EQ(meet(a, join(b, c)), join(meet(a, b), meet(a, c)));
    EXPECT_EQ(complement(complement(a)), a);
    EXPECT_EQ(leq(a, b), meet(a, b) == a);
    EXPECT_EQ(difference(a, b), meet(a, complement(b)));
    EXPECT_EQ(disjoint(a, b), meet(a, b).is_zero());
  }
}

TEST(NSet, MeetOfEvensAndOddsIsEmpty) { EXPECT_EQ(meet(evens, odds), NSet::empty()); }

TEST(NSet, EqModFinExamples) {
  EXPECT_TRUE(eq_mod_fin(evens, join(evens, NSet::finite({3}))));
  EXPECT_FALSE(eq_mod_fin(evens, odds));
  EXPECT_TRUE(eq_mod_fin(NSet::naturals(), difference(NSet::naturals(), NSet::finite({0, 5}))));
}

TEST(NSet, ZeroModFinExamples) {
  EXPECT_TRUE(is_zero_mod_fin(NSet::empty()));
  EXPECT_TRUE(is_zero_mod_fin(NSet::finite({0, 1, 2, 3, 4, 5, 6, 7, 8, 9})));
  EXPECT_FALSE(is_zero_mod_fin(evens));
}

TEST(NSet, CanonicalFormIsUnique) {
  // The same set written with a redundant period and window.
  const NSet a(4, {true, false, true, false}, 8, {true, false, true, false, true, false, true, false});
  EXPECT_EQ(a, evens);
  EXPECT_EQ(a.period(), 2u);
  EXPECT_EQ(a.window(), 0u);
  EXPECT_EQ(to_string(evens), "per=2;res={0};win=0;exp={}");
}

TEST(NSet, TextRoundTrip) {
  const auto s = join(NSet::residues(3, {1}), NSet::finite({0, 2, 7}));
  EXPECT_EQ(parse_nset(to_string(s)), s);
  EXPECT_THROW(parse_nset("per=0;res={};win=0;exp={}"), Error);
  EXPECT_THROW(parse_nset("per=2;res={5};win=0;exp={}"), Error);
  EXPECT_THROW(parse_nset("garbage"), ParseError);
}

TEST(NSet, OperationsAgreeWithPointwiseOracle) {
  std::mt19937 rng(5);
  constexpr std::uint64_t bound = 200;  // beyond every window plus every lcm period drawn here
  for (int trial = 0; trial < 500; ++trial) {
    const auto a = random_nset(rng), b = random_nset(rng);
    const auto A = members_below(a, bound), B = members_below(b, bound);
    std::set<std::uint64_t> expect_meet, expect_join, expect_diff, expect_comp;
    for (std::uint64_t n = 0; n < bound; ++n) {
      if (A.count(n) && B.count(n)) expect_meet.insert(n);
      if (A.count(n) || B.count(n)) expect_join.insert(n);
      if (A.count(n) && !B.count(n)) expect_diff.insert(n);
      if (!A.count(n)) expect_comp.insert(n);
    }
    EXPECT_EQ(members_below(meet(a, b), bound), expect_meet);
    EXPECT_EQ(members_below(join(a, b), bound), expect_join);
    EXPECT_EQ(members_below(difference(a, b), bound), expect_diff);
    EXPECT_EQ(members_below(complement(a), bound), expect_comp);
    EXPECT_EQ(leq(a, b), expect_diff.empty());
  }
}

TEST(NSet, NormalizationIsIdempotent) {
  std::mt19937 rng(6);
  for (int trial = 0; trial < 500; ++trial) {
    const auto a = random_nset(rng);
    // Re-expand to a larger period and window, then normalize again.
    const auto again = NSet::tabulate(a.period() * 3, a.window() + 6 * a.period(),
                                      [&](std::uint64_t n) { return a.contains(n); });
    EXPECT_EQ(again, a);
    EXPECT_EQ(again.period(), a.period());
    EXPECT_EQ(again.window(), a.window());
    EXPECT_EQ(parse_nset(to_string(a)), a);
  }
}

TEST(NSet, EqModFinIsAnEquivalence) {
  std::mt19937 rng(7);
  std::vector<NSet> pool;
  for (int i = 0; i < 40; ++i) pool.push_back(random_nset(rng));
  // Guarantee some nontrivial classes.
  for (int i = 0; i < 10; ++i) pool.push_back(symmetric_difference(pool[i], NSet::finite({1, 4, 9})));
  for (const auto& a : pool) {
    EXPECT_TRUE(eq_mod_fin(a, a));
    for (const auto& b : pool) {
      const bool ab = eq_mod_fin(a, b);
      EXPECT_EQ(ab, eq_mod_fin(b, a));
      EXPECT_EQ(ab, is_zero_mod_fin(symmetric_difference(a, b)));
      EXPECT_EQ(ab, leq_mod_fin(a, b) && leq_mod_fin(b, a));
      if (!ab) continue;
      for (const auto& c : pool)
        if (eq_mod_fin(b, c)) EXPECT_TRUE(eq_mod_fin(a, c));
    }
  }
}
