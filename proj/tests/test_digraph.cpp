#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "endograph/digraph.hpp"
#include "endograph/errors.hpp"
#include "endograph/group.hpp"
#include "endograph/hom.hpp"

using namespace endograph;

namespace {

bool brute_isomorphic(const Digraph& a, const Digraph& b) {
  if (a.size() != b.size()) return false;
  std::vector<std::size_t> p(a.size());
  std::iota(p.begin(), p.end(), std::size_t{0});
  do {
    bool ok = true;
    for (std::size_t x = 0; ok && x < a.size(); ++x)
      for (std::size_t y = 0; ok && y < a.size(); ++y) ok = a.has_arc(x, y) == b.has_arc(p[x], p[y]);
    if (ok) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

Digraph random_digraph(std::size_t n, double density, std::mt19937& rng) {
  std::bernoulli_distribution coin(density);
  Digraph d = Digraph::unlabeled(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (x != y && coin(rng)) d.add_arc(x, y);
  return d;
}

Digraph relabel(const Digraph& d, const std::vector<std::size_t>& p) {
  Digraph out = Digraph::unlabeled(d.size());
  for (const auto& [x, y] : d.arcs()) out.add_arc(p[x], p[y]);
  return out;
}

}  // namespace

TEST(Digraph, ArcsAndLoops) {
  Digraph d = Digraph::unlabeled(3);
  d.add_arc(2, 0);
  d.add_arc(0, 1);
  EXPECT_EQ(d.arcs(), (std::vector<Arc>{{0, 1}, {2, 0}}));
  EXPECT_THROW(d.add_arc(1, 1), ContractError);
  EXPECT_THROW(d.add_arc(0, 5), std::out_of_range);
}

TEST(Digraph, EndoDigraphOfZ2) {
  const auto d = endo_digraph(build_group("cyclic:2"));
  EXPECT_EQ(d.arcs(), (std::vector<Arc>{{1, 0}}));
  EXPECT_EQ(endo_digraph(build_group("cyclic:5")).arc_count(), 4u + 4u * 3u);
}

TEST(Digraph, EndoDigraphsAreTransitive) {
  for (const auto* s : {"dihedral:4", "quaternion", "abelian:2,4", "metacyclic:7,3"}) {
    const auto d = endo_digraph(build_group(s));
    EXPECT_TRUE(is_transitively_closed(d)) << s;
    for (std::size_t x = 1; x < d.size(); ++x) EXPECT_TRUE(d.has_arc(x, 0)) << s;
    EXPECT_FALSE(d.successors(0).any()) << s;
  }
}

TEST(Digraph, SymmetriseAndDeleteIdentity) {
  const auto g = build_group("cyclic:6");
  const auto eg = symmetrise(endo_digraph(g));
  EXPECT_EQ(eg.edge_count(), 13u);
  const auto star = delete_identity(eg);
  EXPECT_EQ(star.size(), 5u);
  EXPECT_EQ(star.edge_count(), 8u);
}

TEST(Digraph, CompressedCyclicTwelve) {
  const auto c = compress(build_group("cyclic:12"));
  EXPECT_EQ(c.size(), 5u);
  EXPECT_EQ(c.digraph.arc_count(), 7u);
  EXPECT_EQ(c.sizes, (std::vector<std::size_t>{4, 2, 2, 2, 1}));
  EXPECT_EQ(c.digraph.label(0), "[1]");
}

TEST(Digraph, CompressedPrimeCyclicIsOneVertex) {
  const auto c = compress(build_group("cyclic:7"));
  EXPECT_EQ(c.size(), 1u);
  EXPECT_EQ(c.digraph.arc_count(), 0u);
}

TEST(Digraph, CompressedOrdersOfKnownGroups) {
  const auto s4 = compress(build_group("symmetric:4"));
  EXPECT_EQ(s4.size(), 4u);
  EXPECT_EQ(s4.digraph.arc_count(), 3u);
  const auto d12 = compress(build_group("dihedral:6"));
  EXPECT_EQ(d12.size(), 4u);
  EXPECT_EQ(d12.digraph.arc_count(), 5u);
}

TEST(Digraph, EndoClassCondensationIsAStrictOrder) {
  for (const auto* s : {"cyclic:12", "dihedral:4", "abelian:2,4"}) {
    const auto c = condense_endo_classes(build_group(s));
    EXPECT_TRUE(is_transitively_closed(c.digraph)) << s;
    for (const auto& [x, y] : c.digraph.arcs()) EXPECT_FALSE(c.digraph.has_arc(y, x)) << s;
  }
}

TEST(Digraph, IsomorphismAgreesWithBruteForce) {
  std::mt19937 rng(20241016);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 6;
    const auto a = random_digraph(n, 0.35, rng);
    const auto b = trial % 2 ? random_digraph(n, 0.35, rng) : [&] {
      std::vector<std::size_t> p(n);
      std::iota(p.begin(), p.end(), std::size_t{0});
      std::shuffle(p.begin(), p.end(), rng);
      return relabel(a, p);
    }();
    EXPECT_EQ(digraph_isomorphic(a, b).isomorphic, brute_isomorphic(a, b)) << trial;
  }
}

TEST(Digraph, PGroupIsomorphisms) {
  const auto z27 = endo_digraph(build_group("cyclic:27"));
  const auto z93 = endo_digraph(build_group("abelian:9,3"));
  const auto m27 = endo_digraph(build_group("modular_p3:3"));
  const auto r = digraph_isomorphic(z27, z93);
  ASSERT_TRUE(r.isomorphic);
  EXPECT_EQ(r.witness.size(), 27u);
  EXPECT_TRUE(digraph_isomorphic(z93, m27).isomorphic);
  EXPECT_FALSE(digraph_isomorphic(endo_digraph(build_group("heisenberg:3")), endo_digraph(build_group("abelian:3,3,3")))
                   .isomorphic);
}

TEST(Digraph, StrongIsomorphism) {
  const auto z5 = compress(build_group("cyclic:5")), z7 = compress(build_group("cyclic:7"));
  EXPECT_TRUE(digraph_isomorphic(z5.digraph, z7.digraph).isomorphic);
  EXPECT_FALSE(strong_isomorphic(z5, z7).isomorphic);
  EXPECT_TRUE(strong_isomorphic(compress(build_group("cyclic:27")), compress(build_group("abelian:9,3"))).isomorphic);
}

TEST(Digraph, StrongProductOfCoprimeCyclics) {
  const auto p = strong_product(endo_digraph(build_group("cyclic:2")), endo_digraph(build_group("cyclic:3")));
  EXPECT_EQ(p.size(), 6u);
  EXPECT_TRUE(digraph_isomorphic(p, endo_digraph(build_group("cyclic:6"))).isomorphic);
  EXPECT_THROW(strong_product(Digraph::unlabeled(200), Digraph::unlabeled(200), 1000), SizeError);
}

TEST(Digraph, CyclicMatchesPrimaryDecomposition) {
  for (std::uint64_t n : {12u, 30u, 36u, 60u}) {
    GroupSpec spec;
    bool first = true;
    for (const auto& pp : numtheory::factorize(n)) {
      const auto c = GroupSpec::cyclic(pp.value());
      spec = first ? c : GroupSpec::product(spec, c);
      first = false;
    }
    EXPECT_TRUE(digraph_isomorphic(endo_digraph(build_group(GroupSpec::cyclic(n))), endo_digraph(build_group(spec))).isomorphic)
        << n;
  }
}

TEST(Digraph, DisjointUnion) {
  const auto u = disjoint_union(SimpleGraph::complete(1), SimpleGraph::complete(3));
  EXPECT_EQ(u.size(), 4u);
  EXPECT_EQ(u.edge_count(), 3u);
  EXPECT_EQ(u.degree(0), 0u);
  EXPECT_TRUE(graph_isomorphic(u, disjoint_union(SimpleGraph::complete(3), SimpleGraph::complete(1))).isomorphic);
}
