#include <gtest/gtest.h>

#include "autrecon/formulas.hpp"
#include "autrecon/reconstruct.hpp"

using namespace autrecon;

namespace {

GroupIso identity_iso(const GroupTable& G) {
  GroupIso phi{&G, &G, G.all()};
  return phi;
}

}  // namespace

TEST(VerifyIso, IdentityAndInnerAutomorphisms) {
  const auto S3 = symmetric_group(3);
  EXPECT_TRUE(verify_iso(identity_iso(S3)));
  const auto S4 = symmetric_group(4);
  for (std::size_t h = 0; h < S4.size(); ++h) EXPECT_TRUE(verify_iso(inner_automorphism(S4, h)));
}

TEST(VerifyIso, SwappingTwoTranspositionsIsNotAHomomorphism) {
  const auto S3 = symmetric_group(3);
  auto phi = identity_iso(S3);
  const auto a = S3.index_of(FinAut::from_cycles(3, {{0, 1}}));
  const auto b = S3.index_of(FinAut::from_cycles(3, {{0, 1, 2}}));
  std::swap(phi.mapping[a], phi.mapping[b]);
  const auto check = verify_iso(phi);
  EXPECT_FALSE(check);
  EXPECT_NE(check.failure.find("Phi(fg) != Phi(f)Phi(g)"), std::string::npos);

  auto not_bijective = identity_iso(S3);
  not_bijective.mapping[1] = 0;
  EXPECT_FALSE(verify_iso(not_bijective));

  const auto C6 = group_from_descriptor("cyc:6");
  GroupIso wrong_size{&S3, &C6, {0, 1, 2}};
  EXPECT_THROW(verify_iso(wrong_size), PreconditionError);
}

TEST(BuildTheta, IdentityGivesIdentity) {
  const auto G = symmetric_group(4);
  const auto theta = build_theta(identity_iso(G));
  ASSERT_TRUE(theta.well_defined);
  for (const auto& e : theta.entries) EXPECT_EQ(*e.value, e.a);
  EXPECT_TRUE(check_injective(theta));
  const auto chains = check_chains(theta);
  EXPECT_TRUE(chains);
  EXPECT_EQ(chains.chains_checked, 24u);
}

TEST(BuildTheta, InnerAutomorphismActsAsH) {
  const auto G = symmetric_group(4);
  for (std::size_t h = 0; h < G.size(); ++h) {
    const auto theta = build_theta(inner_automorphism(G, h));
    ASSERT_TRUE(theta.well_defined);
    for (const auto& e : theta.entries) EXPECT_EQ(*e.value, apply(G.element(h), e.a));
    EXPECT_TRUE(check_injective(theta));
    EXPECT_TRUE(check_chains(theta));
  }
}

TEST(BuildTheta, DomainIsSupportsThatOccur) {
  const auto G = symmetric_group(4);
  const auto theta = build_theta(identity_iso(G));
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(theta.find(FinElem::atom(4, i)), nullptr);
  // Every subset with at least two points is the support of some permutation.
  EXPECT_EQ(theta.entries.size(), 1u + 6u + 4u + 1u);
  EXPECT_EQ(theta.entries.front().a, FinElem::empty(4));
  EXPECT_EQ(theta.find(FinElem::full(4))->witnesses, 9u);  // six 4-cycles, three double transpositions
  for (const auto& e : theta.entries)
    for (const auto& g : G.elements()) EXPECT_NE(theta.find(apply(g, e.a)), nullptr);
}

TEST(BuildTheta, ChainThroughTwoThreeFourPoints) {
  const auto G = symmetric_group(4);
  const auto h = G.index_of(FinAut::from_cycles(4, {{0, 3}, {1, 2}}));
  const auto theta = build_theta(inner_automorphism(G, h));
  const std::vector<FinElem> chain = {FinElem::of(4, {0, 1}), FinElem::of(4, {0, 1, 2}), FinElem::full(4)};
  std::vector<FinElem> image;
  for (const auto& a : chain) image.push_back(*theta.find(a)->value);
  EXPECT_EQ(image[0], FinElem::of(4, {2, 3}));
  EXPECT_EQ(image[1], FinElem::of(4, {1, 2, 3}));
  EXPECT_EQ(image[2], FinElem::full(4));
}

TEST(BuildTheta, CorruptedValuesAreCaught) {
  const auto G = symmetric_group(4);
  auto theta = build_theta(identity_iso(G));
  // Collapse {0,1} onto {0,2}: both injectivity and monotonicity break.
  for (auto& e : theta.entries)
    if (e.a == FinElem::of(4, {0, 1})) e.value = FinElem::of(4, {0, 2});
  const auto inj = check_injective(theta);
  EXPECT_FALSE(inj);
  EXPECT_NE(inj.failure.find("{0,1}@4"), std::string::npos) << inj.failure;
  EXPECT_NE(inj.failure.find("{0,2}@4"), std::string::npos) << inj.failure;
  const auto ch = check_chains(theta);
  EXPECT_FALSE(ch);
  EXPECT_NE(ch.failure.find("{0,1}@4 < {0,1,"), std::string::npos) << ch.failure;

  auto shrunk = build_theta(identity_iso(G));
  for (auto& e : shrunk.entries)
    if (e.a == FinElem::full(4)) e.value = FinElem::of(4, {0, 1, 2});
  EXPECT_FALSE(check_chains(shrunk));

  auto undefined = build_theta(identity_iso(G));
  undefined.well_defined = false;
  EXPECT_THROW(check_injective(undefined), PreconditionError);
  EXPECT_THROW(check_chains(undefined), PreconditionError);
}

TEST(BuildTheta, WorkerCountDoesNotMatter) {
  const auto G = group_from_descriptor("tree:3");
  const auto phi = inner_automorphism(G, 77);
  EXPECT_EQ(format_text(build_theta(phi, 1)), format_text(build_theta(phi, 4)));
}

TEST(FindIsos, ClassicalCounts) {
  const auto S3 = symmetric_group(3);
  EXPECT_EQ(find_isos(S3, S3, 100).size(), 6u);
  EXPECT_TRUE(find_isos(S3, group_from_descriptor("cyc:6"), 100).empty());
  const auto S4 = symmetric_group(4);
  EXPECT_EQ(find_isos(S4, S4, 100).size(), 24u);
  const auto C5 = group_from_descriptor("cyc:5");
  EXPECT_EQ(find_isos(C5, C5, 100).size(), 4u);
  const auto K = group_from_descriptor("gen:(0 1);(2 3)@4");
  EXPECT_EQ(find_isos(K, K, 100).size(), 6u);
}

TEST(FindIsos, LimitTruncatesInSearchOrder) {
  const auto S3 = symmetric_group(3);
  const auto all = find_isos(S3, S3, 100);
  const auto first = find_isos(S3, S3, 1);
  ASSERT_EQ(first.size(), 1u);
  EXPECT_EQ(first[0].mapping, all[0].mapping);
  for (const auto& phi : all) EXPECT_TRUE(verify_iso(phi));
  EXPECT_THROW(find_isos(S3, S3, 1, 5), CapExceeded);
}

TEST(FindIsos, IsomorphismsTransportPhiEq) {
  const auto G = symmetric_group(4);
  const FormulaEngine engine(G);
  for (const auto& phi : find_isos(G, G, 100)) {
    for (std::size_t f = 0; f < G.size(); ++f)
      for (std::size_t g = 0; g < G.size(); ++g) {
        EXPECT_EQ(engine.phi_le(f, g), engine.phi_le(phi.mapping[f], phi.mapping[g]));
        EXPECT_EQ(engine.phi_eq(f, g), engine.phi_eq(phi.mapping[f], phi.mapping[g]));
      }
    const auto theta = build_theta(phi);
    EXPECT_TRUE(theta.well_defined);
  }
}

TEST(FindIsos, BetweenDifferentPresentations) {
  // S_3 acting on 3 points versus S_3 generated on 5 points with two fixed.
  const auto A = symmetric_group(3);
  const auto B = group_from_descriptor("gen:(0 1);(1 2)@5");
  const auto isos = find_isos(A, B, 100);
  ASSERT_EQ(isos.size(), 6u);
  const auto theta = build_theta(isos[0]);
  EXPECT_TRUE(theta.well_defined);
  EXPECT_EQ(theta.target_universe, 5u);
  EXPECT_TRUE(check_injective(theta));
  EXPECT_TRUE(check_chains(theta));
}
