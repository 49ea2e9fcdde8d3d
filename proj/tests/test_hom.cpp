#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <gtest/gtest.h>

#include "endograph/errors.hpp"
#include "endograph/group.hpp"
#include "endograph/hom.hpp"

using namespace endograph;

namespace {

// Oracle: test every one of the |G|^|G| self-maps.
std::vector<std::vector<Element>> brute_endomorphisms(const FiniteGroup& g) {
  const std::size_t n = g.order();
  std::vector<std::vector<Element>> out;
  std::vector<Element> f(n, 0);
  while (true) {
    bool ok = f[0] == 0;
    for (Element x = 0; ok && x < n; ++x)
      for (Element y = 0; ok && y < n; ++y) ok = f[g.mul(x, y)] == g.mul(f[x], f[y]);
    if (ok) out.push_back(f);
    std::size_t i = 0;
    while (i < n && ++f[i] == n) f[i++] = 0;
    if (i == n) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<Element>> images_of(const std::vector<Mapping>& maps) {
  std::vector<std::vector<Element>> out;
  for (const auto& m : maps) out.push_back(m.images);
  return out;
}

const EnumerationLimits kWide{1000, std::uint64_t{1} << 20};

}  // namespace

TEST(Hom, EnumerationMatchesBruteForce) {
  for (const auto* s : {"cyclic:1", "cyclic:2", "cyclic:4", "cyclic:6", "abelian:2,2", "dihedral:3", "cyclic:7"}) {
    const auto g = build_group(s);
    EXPECT_EQ(images_of(enumerate_endomorphisms(g)), brute_endomorphisms(g)) << s;
  }
}

TEST(Hom, EndomorphismCounts) {
  const std::vector<std::pair<std::string, std::size_t>> expected{
      {"cyclic:12", 12}, {"abelian:2,2", 16}, {"dihedral:3", 10},  {"quaternion", 28},     {"dihedral:6", 64},
      {"sl25", 121},     {"symmetric:4", 58}, {"alternating:5", 121}, {"metacyclic:7,3", 57}, {"heisenberg:3", 729}};
  for (const auto& [s, n] : expected) EXPECT_EQ(enumerate_endomorphisms(build_group(s), kWide).size(), n) << s;
  EXPECT_EQ(enumerate_automorphisms(build_group("quaternion")).size(), 24u);
  EXPECT_EQ(enumerate_automorphisms(build_group("symmetric:4")).size(), 24u);
}

TEST(Hom, CoprimeProductsMultiplyCounts) {
  for (auto [a, b] : std::vector<std::pair<std::string, std::string>>{
           {"dihedral:3", "cyclic:5"}, {"quaternion", "cyclic:3"}, {"cyclic:4", "abelian:3,3"}}) {
    const auto g = build_group(a), h = build_group(b);
    const auto gh = direct_product(g, h);
    EXPECT_EQ(enumerate_endomorphisms(gh, kWide).size(),
              enumerate_endomorphisms(g).size() * enumerate_endomorphisms(h).size())
        << a << " x " << b;
  }
}

TEST(Hom, EndomorphismsAreClosedUnderComposition) {
  for (const auto* s : {"dihedral:4", "quaternion", "abelian:2,4"}) {
    const auto g = build_group(s);
    const auto endos = enumerate_endomorphisms(g);
    const std::set<Mapping> all(endos.begin(), endos.end());
    for (const auto& f : endos)
      for (const auto& h : endos) EXPECT_TRUE(all.count(compose(f, h))) << s;
    std::vector<Element> id(g.order());
    std::iota(id.begin(), id.end(), Element{0});
    EXPECT_TRUE(all.count(Mapping{g.label(), id}));
    EXPECT_TRUE(all.count(Mapping{g.label(), std::vector<Element>(g.order(), 0)}));
  }
}

TEST(Hom, AutomorphismsAreTheBijectiveEndomorphisms) {
  for (const auto* s : {"dihedral:4", "abelian:2,2", "metacyclic:7,3"}) {
    const auto g = build_group(s);
    std::vector<Mapping> bijective;
    for (const auto& f : enumerate_endomorphisms(g))
      if (is_bijective(f)) bijective.push_back(f);
    EXPECT_EQ(enumerate_automorphisms(g), bijective) << s;
  }
}

TEST(Hom, VerifyHomomorphismReportsViolations) {
  const auto g = build_group("cyclic:4");
  EXPECT_TRUE(std::holds_alternative<Mapping>(verify_homomorphism(g, {0, 2, 0, 2})));
  const auto bad = verify_homomorphism(g, {0, 1, 1, 1});
  ASSERT_TRUE(std::holds_alternative<Violation>(bad));
  const auto v = std::get<Violation>(bad);
  EXPECT_NE(v.image_of_product, v.product_of_images);
  EXPECT_THROW(verify_homomorphism(g, {0, 1}), ParameterError);
  EXPECT_THROW(verify_homomorphism(g, {0, 1, 2, 9}), ParameterError);
}

TEST(Hom, CyclicReachabilityIsTheGcdCriterion) {
  for (std::uint64_t n = 1; n <= 30; ++n) {
    const auto g = build_group(GroupSpec::cyclic(n));
    const auto rel = endo_reachability(g);
    for (Element x = 0; x < n; ++x)
      for (Element y = 0; y < n; ++y)
        EXPECT_EQ(rel(x, y), std::gcd<std::uint64_t>(y, n) % std::gcd<std::uint64_t>(x, n) == 0) << n;
  }
}

TEST(Hom, AbelianFastPathsMatchEnumeration) {
  for (const auto* s : {"abelian:2,4,8", "abelian:4,4", "abelian:2,2,2,4", "abelian:3,9", "abelian:2,3,4"}) {
    const auto g = build_group(s);
    const auto fast = abelian_reachability(g);
    const auto slow = enumerated_reachability(g, kWide);
    EXPECT_EQ(fast.rows, slow.rows) << s;
    const auto orbits = abelian_automorphism_orbits(g);
    std::vector<Element> parent(g.order());
    std::iota(parent.begin(), parent.end(), Element{0});
    for (const auto& a : enumerate_automorphisms(g, kWide))
      for (Element x = 0; x < g.order(); ++x) {
        Element u = x, v = a(x);
        while (parent[u] != u) u = parent[u];
        while (parent[v] != v) v = parent[v];
        parent[std::max(u, v)] = std::min(u, v);
      }
    EXPECT_EQ(orbits.blocks, detail::partition_from_union_find(g.label(), parent).blocks) << s;
  }
}

TEST(Hom, CyclicTwelveOrbits) {
  const auto orbits = automorphism_orbits(build_group("cyclic:12"));
  EXPECT_EQ(orbits.blocks, (std::vector<ElementSet>{{0}, {1, 5, 7, 11}, {2, 10}, {3, 9}, {4, 8}, {6}}));
}

TEST(Hom, MetacyclicClassesAndOrbits) {
  const auto g = build_group("metacyclic:7,3");
  const auto classes = endomorphism_classes(g);
  const auto orbits = automorphism_orbits(g);
  std::set<std::size_t> c, o;
  for (Element x = 0; x < g.order(); ++x)
    if (g.order_of(x) == 3) {
      c.insert(classes.block_of[x]);
      o.insert(orbits.block_of[x]);
    }
  EXPECT_EQ(c.size(), 1u);
  EXPECT_EQ(o.size(), 2u);
  for (auto b : o) EXPECT_EQ(orbits.blocks[b].size(), 7u);
}

TEST(Hom, OrbitsRefineClasses) {
  for (const auto* s : {"dihedral:6", "quaternion", "symmetric:4", "abelian:2,4"}) {
    const auto g = build_group(s);
    const auto classes = endomorphism_classes(g);
    const auto orbits = automorphism_orbits(g);
    for (const auto& block : orbits.blocks)
      for (Element x : block) EXPECT_EQ(classes.block_of[x], classes.block_of[block.front()]) << s;
  }
}

TEST(Hom, KernelAndImage) {
  const auto g = build_group("cyclic:6");
  const auto ki = kernel_and_image(g, Mapping{g.label(), {0, 2, 4, 0, 2, 4}});
  EXPECT_EQ(ki.kernel, (ElementSet{0, 3}));
  EXPECT_EQ(ki.image, (ElementSet{0, 2, 4}));
  EXPECT_THROW(kernel_and_image(g, Mapping{g.label(), {0, 1, 1, 1, 1, 1}}), ContractError);
}

TEST(Hom, PArrowCriterion) {
  // Z8 x Z2 ordered as Z2 x Z8: profile (1, 3).  a = (0,4), b = (1,0).
  const std::vector<unsigned> profile{1, 3};
  EXPECT_FALSE(abelian_p_arrow(profile, 2, std::vector<unsigned>{1, 2}, std::vector<unsigned>{0, 3}));
  EXPECT_TRUE(abelian_p_arrow(profile, 2, std::vector<unsigned>{0, 3}, std::vector<unsigned>{1, 2}));
  EXPECT_THROW(abelian_p_arrow(profile, 4, profile, profile), ParameterError);
  EXPECT_THROW(abelian_p_arrow(std::vector<unsigned>{3, 1}, 2, profile, profile), ParameterError);
}

TEST(Hom, HomocyclicShapes) {
  EXPECT_TRUE(is_homocyclic_product(build_group("abelian:4,4,3")));
  EXPECT_FALSE(is_homocyclic_product(build_group("abelian:2,8")));
  EXPECT_FALSE(is_homocyclic_product(build_group("dihedral:3")));
  const auto g = build_group("abelian:4,4");
  EXPECT_THROW(homocyclic_arrow(build_group("abelian:2,8"), 0, 0), ParameterError);
  const auto rel = endo_reachability(g);
  for (Element x = 0; x < g.order(); ++x)
    for (Element y = 0; y < g.order(); ++y) EXPECT_EQ(homocyclic_arrow(g, x, y), rel(x, y));
}

TEST(Hom, CapsAreEnforced) {
  const EnumerationLimits tiny{10, 100};
  EXPECT_FALSE(enumeration_feasible(build_group("symmetric:4"), tiny));
  EXPECT_THROW(enumerate_endomorphisms(build_group("symmetric:4"), tiny), SizeError);
  // Abelian groups fall back to the sumset.
  EXPECT_NO_THROW(endo_reachability(build_group("abelian:2,4,8"), tiny));
}
