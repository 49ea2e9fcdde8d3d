#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "endograph/analytics.hpp"
#include "endograph/digraph.hpp"
#include "endograph/errors.hpp"
#include "endograph/group.hpp"

using namespace endograph;

namespace {

SimpleGraph random_graph(std::size_t n, double density, std::mt19937& rng) {
  std::bernoulli_distribution coin(density);
  SimpleGraph g = SimpleGraph::unlabeled(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y)
      if (coin(rng)) g.add_edge(x, y);
  return g;
}

bool is_clique(const SimpleGraph& g, unsigned mask) {
  for (std::size_t x = 0; x < g.size(); ++x)
    for (std::size_t y = x + 1; y < g.size(); ++y)
      if ((mask >> x & 1U) && (mask >> y & 1U) && !g.has_edge(x, y)) return false;
  return true;
}

// Subset oracle: all inclusion-maximal cliques.
std::vector<std::vector<std::size_t>> brute_maximal_cliques(const SimpleGraph& g) {
  const unsigned n = static_cast<unsigned>(g.size());
  std::vector<std::vector<std::size_t>> out;
  for (unsigned mask = 1; mask < (1U << n); ++mask) {
    if (!is_clique(g, mask)) continue;
    bool maximal = true;
    for (unsigned v = 0; v < n && maximal; ++v)
      if (!(mask >> v & 1U) && is_clique(g, mask | 1U << v)) maximal = false;
    if (!maximal) continue;
    std::vector<std::size_t> c;
    for (unsigned v = 0; v < n; ++v)
      if (mask >> v & 1U) c.push_back(v);
    out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t brute_chromatic(const SimpleGraph& g) {
  const std::size_t n = g.size();
  if (n == 0) return 0;
  for (std::size_t k = 1;; ++k) {
    std::vector<std::size_t> colour(n, 0);
    while (true) {
      bool ok = true;
      for (const auto& [x, y] : g.edges()) ok = ok && colour[x] != colour[y];
      if (ok) return k;
      std::size_t i = 0;
      while (i < n && ++colour[i] == k) colour[i++] = 0;
      if (i == n) break;
    }
  }
}

bool brute_hamiltonian(const Digraph& d) {
  const std::size_t n = d.size();
  if (n <= 1) return true;
  std::vector<std::size_t> p(n - 1);
  std::iota(p.begin(), p.end(), std::size_t{1});
  do {
    bool ok = d.has_arc(0, p.front()) && d.has_arc(p.back(), 0);
    for (std::size_t i = 0; ok && i + 1 < p.size(); ++i) ok = d.has_arc(p[i], p[i + 1]);
    if (ok) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

SimpleGraph complete_bipartite(std::size_t a, std::size_t b) {
  SimpleGraph g = SimpleGraph::unlabeled(a + b);
  for (std::size_t x = 0; x < a; ++x)
    for (std::size_t y = 0; y < b; ++y) g.add_edge(x, a + y);
  return g;
}

SimpleGraph petersen() {
  SimpleGraph g = SimpleGraph::unlabeled(10);
  for (std::size_t i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(i, i + 5);
    g.add_edge(i + 5, (i + 2) % 5 + 5);
  }
  return g;
}

}  // namespace

TEST(Analytics, BasicStatsOfSmallGraphs) {
  const auto k4 = basic_stats(SimpleGraph::complete(4));
  EXPECT_TRUE(k4.is_complete);
  EXPECT_EQ(k4.girth, std::optional<std::size_t>(3));
  EXPECT_FALSE(k4.is_bipartite);
  const auto path = basic_stats(complete_bipartite(1, 3));
  EXPECT_TRUE(path.is_tree);
  EXPECT_TRUE(path.is_bipartite);
  EXPECT_EQ(path.girth, std::nullopt);
  EXPECT_EQ(basic_stats(petersen()).girth, std::optional<std::size_t>(5));
  EXPECT_EQ(basic_stats(complete_bipartite(3, 3)).girth, std::optional<std::size_t>(4));
}

TEST(Analytics, EndomorphismGraphTrees) {
  EXPECT_TRUE(basic_stats(symmetrise(endo_digraph(build_group("cyclic:2")))).is_tree);
  EXPECT_FALSE(basic_stats(symmetrise(endo_digraph(build_group("cyclic:3")))).is_tree);
  EXPECT_TRUE(basic_stats(delete_identity(symmetrise(endo_digraph(build_group("cyclic:3"))))).is_tree);
}

TEST(Analytics, MaximalCliquesAgainstSubsetOracle) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const auto g = random_graph(3 + trial % 8, 0.5, rng);
    auto got = maximal_cliques(g);
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, brute_maximal_cliques(g)) << trial;
  }
}

TEST(Analytics, CliqueOrderIsSizeThenLex) {
  const auto cliques = maximal_cliques(symmetrise(endo_digraph(build_group("cyclic:12"))));
  ASSERT_EQ(cliques.size(), 3u);
  EXPECT_EQ(cliques[0].size(), 9u);
  EXPECT_EQ(cliques[1].size(), 8u);
  EXPECT_EQ(cliques[2].size(), 8u);
  EXPECT_LT(cliques[1], cliques[2]);
  EXPECT_EQ(maximal_cliques(SimpleGraph::complete(4)).size(), 1u);
  EXPECT_EQ(maximal_cliques(symmetrise(endo_digraph(build_group("cyclic:30")))).size(), 6u);
}

TEST(Analytics, ChromaticAgainstBruteForce) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const auto g = random_graph(2 + trial % 8, 0.45, rng);
    EXPECT_EQ(chromatic_number(g), brute_chromatic(g)) << trial;
    EXPECT_EQ(maximum_clique(g).size(), brute_maximal_cliques(g).empty() ? 0u : [&] {
      std::size_t best = 0;
      for (const auto& c : brute_maximal_cliques(g)) best = std::max(best, c.size());
      return best;
    }());
  }
  EXPECT_EQ(chromatic_number(petersen()), 3u);
}

TEST(Analytics, EndomorphismGraphsArePerfectOnCatalogSamples) {
  for (const auto* s : {"cyclic:6", "cyclic:12", "dihedral:4", "quaternion", "abelian:2,4", "symmetric:4", "dicyclic:3"}) {
    const auto cc = clique_and_chromatic(symmetrise(endo_digraph(build_group(s))));
    EXPECT_EQ(cc.clique_number, cc.chromatic_number) << s;
  }
  EXPECT_EQ(clique_and_chromatic(symmetrise(endo_digraph(build_group("cyclic:6")))).clique_number, 5u);
}

TEST(Analytics, PlanarityCertificates) {
  for (const auto& g : {SimpleGraph::complete(5), complete_bipartite(3, 3), petersen()}) {
    const auto v = planarity(g);
    EXPECT_FALSE(v.planar);
    EXPECT_TRUE(validate_kuratowski(g, v.kuratowski_edges));
  }
  for (const auto& g : {SimpleGraph::complete(4), complete_bipartite(2, 5), SimpleGraph::unlabeled(3)}) {
    const auto v = planarity(g);
    EXPECT_TRUE(v.planar);
    EXPECT_TRUE(validate_embedding(g, v.rotation));
  }
  std::mt19937 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = random_graph(4 + trial % 9, 0.3, rng);
    EXPECT_TRUE(validate_planarity(g, planarity(g))) << trial;
    if (g.size() >= 3 && g.edge_count() > 3 * g.size() - 6) {
      EXPECT_FALSE(planarity(g).planar);
    }
  }
}

TEST(Analytics, ValidatorsRejectBadCertificates) {
  const auto k5 = SimpleGraph::complete(5);
  auto edges = k5.edges();
  edges.pop_back();
  EXPECT_FALSE(validate_kuratowski(k5, edges));
  // No rotation system of K3,3 can pass Euler's formula.
  const auto k33 = complete_bipartite(3, 3);
  EXPECT_FALSE(validate_embedding(k33, {{3, 4, 5}, {3, 4, 5}, {3, 4, 5}, {0, 1, 2}, {0, 1, 2}, {0, 1, 2}}));
  EXPECT_FALSE(validate_embedding(k33, {{3, 4, 5}, {5, 4, 3}, {3, 5, 4}, {0, 2, 1}, {0, 1, 2}, {2, 1, 0}}));
  EXPECT_FALSE(validate_embedding(SimpleGraph::complete(4), {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}}));
}

TEST(Analytics, PlanarEndomorphismGraphs) {
  EXPECT_TRUE(planarity(symmetrise(endo_digraph(build_group("abelian:2,2")))).planar);
  EXPECT_TRUE(planarity(symmetrise(endo_digraph(build_group("cyclic:4")))).planar);
  EXPECT_FALSE(planarity(symmetrise(endo_digraph(build_group("cyclic:5")))).planar);
  // EG(S3) is K1 joined to K2 + K3.
  EXPECT_TRUE(planarity(symmetrise(endo_digraph(build_group("dihedral:3")))).planar);
  EXPECT_FALSE(planarity(symmetrise(endo_digraph(build_group("dihedral:4")))).planar);
}

TEST(Analytics, ConnectivityAndHamiltonicity) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 80; ++trial) {
    std::bernoulli_distribution coin(0.4);
    const std::size_t n = 1 + trial % 7;
    Digraph d = Digraph::unlabeled(n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (x != y && coin(rng)) d.add_arc(x, y);
    EXPECT_EQ(has_hamiltonian_cycle(d), brute_hamiltonian(d)) << trial;
    if (has_hamiltonian_cycle(d)) {
      EXPECT_TRUE(is_strongly_connected(d));
    }
  }
  EXPECT_THROW(has_hamiltonian_cycle(Digraph::unlabeled(64)), SizeError);
  EXPECT_FALSE(digraph_connectivity(Digraph::unlabeled(70)).has_hamiltonian_cycle.has_value());
}

TEST(Analytics, DiconnectedOnlyForElementaryAbelian) {
  EXPECT_TRUE(digraph_connectivity(delete_identity(endo_digraph(build_group("abelian:2,2,2")))).is_strongly_connected);
  EXPECT_FALSE(digraph_connectivity(delete_identity(endo_digraph(build_group("cyclic:4")))).is_strongly_connected);
  const auto full = digraph_connectivity(endo_digraph(build_group("cyclic:3")));
  EXPECT_FALSE(full.is_strongly_connected);
}

TEST(Analytics, SinglePointBasis) {
  EXPECT_EQ(single_point_basis(endo_digraph(build_group("cyclic:12"))), std::optional<std::size_t>(1));
  EXPECT_TRUE(single_point_basis(endo_digraph(build_group("quaternion"))).has_value());
  EXPECT_FALSE(single_point_basis(endo_digraph(build_group("dihedral:3"))).has_value());
  Digraph path = Digraph::unlabeled(3);
  path.add_arc(0, 1);
  path.add_arc(1, 2);
  EXPECT_THROW(single_point_basis(path), ContractError);
}
