#pragma once

// Graph invariants: girth and friends, certified planarity, maximal
// cliques, exact chromatic number, strong connectivity, Hamiltonicity.

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include "endograph/digraph.hpp"
#include "endograph/errors.hpp"

namespace endograph {

inline constexpr std::size_t kMaxCliqueVertices = 2000;
inline constexpr std::size_t kMaxChromaticVertices = 200;
inline constexpr std::size_t kMaxHamiltonianVertices = 64;

// ---------------------------------------------------------------------------
// Basic statistics

struct BasicStats {
  std::size_t edge_count = 0;
  bool is_complete = false;
  bool is_bipartite = false;
  bool is_tree = false;
  /// Unset for forests.
  std::optional<std::size_t> girth;
};

inline bool is_connected(const SimpleGraph& g) {
  if (g.size() == 0) return true;
  Bitset seen(g.size());
  std::vector<std::size_t> stack{0};
  seen.set(0);
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (auto w = g.neighbors(v).find_first(); w != Bitset::npos; w = g.neighbors(v).find_next(w))
      if (!seen.test(w)) {
        seen.set(w);
        stack.push_back(w);
      }
  }
  return seen.all();
}

inline std::optional<std::size_t> girth(const SimpleGraph& g) {
  const std::size_t n = g.size();
  for (std::size_t x = 0; x < n; ++x)
    for (auto y = g.neighbors(x).find_next(x); y != Bitset::npos; y = g.neighbors(x).find_next(y))
      if (g.neighbors(x).intersects(g.neighbors(y))) return 3;
  std::optional<std::size_t> best;
  std::vector<std::size_t> dist(n), parent(n);
  for (std::size_t s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), SIZE_MAX);
    dist[s] = 0;
    parent[s] = SIZE_MAX;
    std::queue<std::size_t> q;
    q.push(s);
    while (!q.empty()) {
      const auto v = q.front();
      q.pop();
      for (auto w = g.neighbors(v).find_first(); w != Bitset::npos; w = g.neighbors(v).find_next(w)) {
        if (dist[w] == SIZE_MAX) {
          dist[w] = dist[v] + 1;
          parent[w] = v;
          q.push(w);
        } else if (parent[v] != w) {
          const std::size_t cycle = dist[v] + dist[w] + 1;
          if (!best || cycle < *best) best = cycle;
        }
      }
    }
  }
  return best;
}

inline bool is_bipartite(const SimpleGraph& g) {
  std::vector<int> side(g.size(), -1);
  for (std::size_t s = 0; s < g.size(); ++s) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    std::vector<std::size_t> stack{s};
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      for (auto w = g.neighbors(v).find_first(); w != Bitset::npos; w = g.neighbors(v).find_next(w)) {
        if (side[w] < 0) {
          side[w] = 1 - side[v];
          stack.push_back(w);
        } else if (side[w] == side[v]) {
          return false;
        }
      }
    }
  }
  return true;
}

inline BasicStats basic_stats(const SimpleGraph& g) {
  BasicStats s;
  const std::size_t n = g.size();
  s.edge_count = g.edge_count();
  s.is_complete = s.edge_count == n * (n - (n > 0 ? 1 : 0)) / 2;
  s.is_bipartite = is_bipartite(g);
  s.is_tree = n > 0 && s.edge_count + 1 == n && is_connected(g);
  s.girth = girth(g);
  return s;
}

// ---------------------------------------------------------------------------
// Planarity

struct PlanarityVerdict {
  bool planar = false;
  /// Clockwise neighbour order around each vertex, when planar.
  std::vector<std::vector<std::size_t>> rotation;
  /// Edges of a K5 or K3,3 subdivision, when not planar.
  std::vector<Arc> kuratowski_edges;
};

/// Euler characteristic check of a rotation system: every connected
/// component must satisfy V - E + F = 2.
inline bool validate_embedding(const SimpleGraph& g, const std::vector<std::vector<std::size_t>>& rotation) {
  const std::size_t n = g.size();
  if (rotation.size() != n) return false;
  // position[v][w] = index of w in rotation[v]
  std::vector<std::map<std::size_t, std::size_t>> position(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (rotation[v].size() != g.degree(v)) return false;
    for (std::size_t i = 0; i < rotation[v].size(); ++i) {
      const auto w = rotation[v][i];
      if (w >= n || !g.has_edge(v, w) || !position[v].emplace(w, i).second) return false;
    }
  }
  std::vector<std::size_t> component(n, SIZE_MAX);
  std::size_t components = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (component[s] != SIZE_MAX) continue;
    std::vector<std::size_t> stack{s};
    component[s] = components;
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      for (auto w : rotation[v])
        if (component[w] == SIZE_MAX) {
          component[w] = components;
          stack.push_back(w);
        }
    }
    ++components;
  }
  std::vector<long> vertices(components, 0), edges(components, 0), faces(components, 0);
  for (std::size_t v = 0; v < n; ++v) {
    ++vertices[component[v]];
    edges[component[v]] += static_cast<long>(rotation[v].size());
  }
  // Trace faces: after traversing dart (u,v), continue with (v, w) where w
  // follows u in the rotation at v.
  std::set<Arc> used;
  for (std::size_t u = 0; u < n; ++u) {
    for (auto v0 : rotation[u]) {
      if (used.count({u, v0})) continue;
      std::size_t a = u, b = v0;
      while (used.insert({a, b}).second) {
        const auto& rot = rotation[b];
        const std::size_t next = rot[(position[b].at(a) + 1) % rot.size()];
        a = b;
        b = next;
      }
      ++faces[component[u]];
    }
  }
  for (std::size_t c = 0; c < components; ++c) {
    edges[c] /= 2;
    if (edges[c] == 0) faces[c] = 1;
    if (vertices[c] - edges[c] + faces[c] != 2) return false;
  }
  return true;
}

/// Checks that `edges` lie in g and form a subdivision of K5 or K3,3.
inline bool validate_kuratowski(const SimpleGraph& g, const std::vector<Arc>& edges) {
  std::map<std::size_t, std::vector<std::size_t>> adj;
  std::set<Arc> seen;
  for (auto [x, y] : edges) {
    if (x >= g.size() || y >= g.size() || !g.has_edge(x, y)) return false;
    if (!seen.insert({std::min(x, y), std::max(x, y)}).second) return false;
    adj[x].push_back(y);
    adj[y].push_back(x);
  }
  std::vector<std::size_t> branch;
  for (const auto& [v, nbrs] : adj) {
    if (nbrs.size() < 2) return false;
    if (nbrs.size() >= 3) branch.push_back(v);
  }
  // Follow every path of degree-2 vertices from each branch vertex.
  std::set<Arc> branch_pairs;
  std::set<std::size_t> interior;
  for (auto b : branch) {
    for (auto first : adj[b]) {
      std::size_t prev = b, cur = first;
      while (adj[cur].size() == 2) {
        interior.insert(cur);
        const std::size_t next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
        prev = cur;
        cur = next;
      }
      if (cur == b) return false;  // loop after smoothing
      branch_pairs.insert({std::min(b, cur), std::max(b, cur)});
    }
  }
  if (interior.size() + branch.size() != adj.size()) return false;  // stray cycle
  // Each path is seen from both ends, so multi-edges show up as fewer pairs
  // than branch-degree sum / 2.
  std::size_t degree_sum = 0;
  for (auto b : branch) degree_sum += adj[b].size();
  if (branch_pairs.size() * 2 != degree_sum) return false;
  if (branch.size() == 5) {
    for (auto b : branch)
      if (adj[b].size() != 4) return false;
    return branch_pairs.size() == 10;
  }
  if (branch.size() == 6) {
    for (auto b : branch)
      if (adj[b].size() != 3) return false;
    if (branch_pairs.size() != 9) return false;
    // Bipartite with parts of size 3.
    std::map<std::size_t, int> side{{branch[0], 0}};
    for (int pass = 0; pass < 6; ++pass)
      for (auto [x, y] : branch_pairs) {
        if (side.count(x) && !side.count(y)) side[y] = 1 - side[x];
        if (side.count(y) && !side.count(x)) side[x] = 1 - side[y];
      }
    int left = 0;
    for (auto b : branch) {
      if (!side.count(b)) return false;
      left += side[b] == 0;
    }
    for (auto [x, y] : branch_pairs)
      if (side[x] == side[y]) return false;
    return left == 3;
  }
  return false;
}

inline bool validate_planarity(const SimpleGraph& g, const PlanarityVerdict& v) {
  return v.planar ? validate_embedding(g, v.rotation) : validate_kuratowski(g, v.kuratowski_edges);
}

namespace detail {

/// Five mutually adjacent vertices, if any.
inline std::optional<std::vector<std::size_t>> find_k5(const SimpleGraph& g) {
  std::vector<std::size_t> chosen;
  auto extend = [&](auto&& self, const Bitset& candidates) -> bool {
    if (chosen.size() == 5) return true;
    for (auto v = candidates.find_first(); v != Bitset::npos; v = candidates.find_next(v)) {
      Bitset next = candidates & g.neighbors(v);
      // Only look forward to avoid permutations of the same set.
      for (auto w = next.find_first(); w != Bitset::npos && w <= v; w = next.find_next(w)) next.reset(w);
      if (next.count() + chosen.size() + 1 < 5) continue;
      chosen.push_back(v);
      if (self(self, next)) return true;
      chosen.pop_back();
    }
    return false;
  };
  Bitset all(g.size());
  all.set();
  if (extend(extend, all)) return chosen;
  return std::nullopt;
}

}  // namespace detail

namespace detail {

using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS, boost::no_property,
                                         boost::property<boost::edge_index_t, int>>;
using BoostEdge = boost::graph_traits<BoostGraph>::edge_descriptor;

inline BoostGraph to_boost(std::size_t n, const std::vector<Arc>& edges) {
  BoostGraph bg(n);
  for (auto [x, y] : edges) boost::add_edge(x, y, bg);
  auto index = boost::get(boost::edge_index_t(), bg);
  int count = 0;
  for (auto [it, end] = boost::edges(bg); it != end; ++it) boost::put(index, *it, count++);
  return bg;
}

inline bool boost_planar(std::size_t n, const std::vector<Arc>& edges) {
  const auto bg = to_boost(n, edges);
  return boost::boyer_myrvold_planarity_test(bg);
}

/// Boost's Kuratowski output can carry pendant edges.  Dropping every edge
/// whose removal keeps the set non-planar leaves a minimal non-planar
/// subgraph, which is a subdivision of K5 or K3,3.
inline std::vector<Arc> minimise_kuratowski(std::size_t n, std::vector<Arc> edges) {
  for (std::size_t i = 0; i < edges.size();) {
    std::vector<Arc> rest = edges;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    if (!boost_planar(n, rest)) {
      edges = std::move(rest);
    } else {
      ++i;
    }
  }
  return edges;
}

}  // namespace detail

/// Boyer-Myrvold via Boost.Graph; dense graphs (|E| > 3|V| - 6) are
/// answered by a K5 witness when one exists.  Every certificate returned is
/// checked by validate_planarity before return.
inline PlanarityVerdict planarity(const SimpleGraph& g) {
  PlanarityVerdict verdict;
  const std::size_t n = g.size(), m = g.edge_count();
  if (n >= 3 && m > 3 * n - 6) {
    if (auto k5 = detail::find_k5(g)) {
      for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = i + 1; j < 5; ++j) verdict.kuratowski_edges.emplace_back((*k5)[i], (*k5)[j]);
      if (!validate_kuratowski(g, verdict.kuratowski_edges)) throw ContractError("planarity: bad K5 witness");
      return verdict;
    }
  }
  auto bg = detail::to_boost(n, g.edges());
  std::vector<std::vector<detail::BoostEdge>> embedding(n);
  std::vector<detail::BoostEdge> kuratowski;
  namespace bm = boost::boyer_myrvold_params;
  verdict.planar = boost::boyer_myrvold_planarity_test(bm::graph = bg, bm::embedding = embedding.data(),
                                                       bm::kuratowski_subgraph = std::back_inserter(kuratowski));
  if (verdict.planar) {
    verdict.rotation.resize(n);
    for (std::size_t v = 0; v < n; ++v)
      for (const auto& e : embedding[v]) {
        const std::size_t s = boost::source(e, bg), t = boost::target(e, bg);
        verdict.rotation[v].push_back(s == v ? t : s);
      }
  } else {
    for (const auto& e : kuratowski) verdict.kuratowski_edges.emplace_back(boost::source(e, bg), boost::target(e, bg));
    if (!validate_kuratowski(g, verdict.kuratowski_edges))
      verdict.kuratowski_edges = detail::minimise_kuratowski(n, std::move(verdict.kuratowski_edges));
  }
  if (!validate_planarity(g, verdict)) throw ContractError("planarity: certificate failed validation");
  return verdict;
}

// ---------------------------------------------------------------------------
// Cliques and colouring

/// All inclusion-maximal cliques, sorted by size descending then
/// lexicographically.  Bron-Kerbosch with Tomita pivoting.
inline std::vector<std::vector<std::size_t>> maximal_cliques(const SimpleGraph& g) {
  if (g.size() > kMaxCliqueVertices) throw SizeError("maximal_cliques: graph exceeds 2000 vertices");
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> current;
  auto expand = [&](auto&& self, Bitset p, Bitset x) -> void {
    if (p.none()) {
      if (x.none()) {
        out.push_back(current);
        std::sort(out.back().begin(), out.back().end());
      }
      return;
    }
    // Pivot: vertex of P u X with the most neighbours in P.
    std::size_t pivot = Bitset::npos, best = 0;
    for (const Bitset* s : {&p, &x})
      for (auto u = s->find_first(); u != Bitset::npos; u = s->find_next(u)) {
        const std::size_t c = (p & g.neighbors(u)).count();
        if (pivot == Bitset::npos || c > best) {
          pivot = u;
          best = c;
        }
      }
    const Bitset candidates = p - g.neighbors(pivot);
    for (auto v = candidates.find_first(); v != Bitset::npos; v = candidates.find_next(v)) {
      current.push_back(v);
      self(self, p & g.neighbors(v), x & g.neighbors(v));
      current.pop_back();
      p.reset(v);
      x.set(v);
    }
  };
  if (g.size() == 0) return out;
  Bitset p(g.size()), x(g.size());
  p.set();
  expand(expand, p, x);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });
  return out;
}

/// A maximum clique (branch and bound with greedy colouring bounds).
inline std::vector<std::size_t> maximum_clique(const SimpleGraph& g) {
  if (g.size() > kMaxCliqueVertices) throw SizeError("maximum_clique: graph exceeds 2000 vertices");
  std::vector<std::size_t> best, current;
  auto search = [&](auto&& self, Bitset p) -> void {
    // Greedy colour classes give an upper bound for each prefix.
    std::vector<std::size_t> order, bound;
    Bitset uncoloured = p;
    std::size_t colour = 0;
    while (uncoloured.any()) {
      ++colour;
      Bitset q = uncoloured;
      while (q.any()) {
        const auto v = q.find_first();
        q.reset(v);
        q -= g.neighbors(v);
        uncoloured.reset(v);
        order.push_back(v);
        bound.push_back(colour);
      }
    }
    for (std::size_t i = order.size(); i-- > 0;) {
      if (current.size() + bound[i] <= best.size()) return;
      const auto v = order[i];
      current.push_back(v);
      const Bitset next = p & g.neighbors(v);
      if (next.none()) {
        if (current.size() > best.size()) best = current;
      } else {
        self(self, next);
      }
      current.pop_back();
      p.reset(v);
    }
  };
  if (g.size() == 0) return best;
  Bitset all(g.size());
  all.set();
  search(search, all);
  std::sort(best.begin(), best.end());
  return best;
}

/// Exact chromatic number by DSATUR branch and bound; a maximum clique is
/// precoloured, which gives the lower bound without assuming it is tight.
inline std::size_t chromatic_number(const SimpleGraph& g) {
  const std::size_t n = g.size();
  if (n > kMaxChromaticVertices) throw SizeError("chromatic_number: graph exceeds 200 vertices");
  if (n == 0) return 0;
  const auto clique = maximum_clique(g);
  std::vector<int> colour(n, -1);
  for (std::size_t i = 0; i < clique.size(); ++i) colour[clique[i]] = static_cast<int>(i);
  std::size_t best = n + 1;
  // Greedy upper bound first.
  {
    std::vector<int> c = colour;
    std::size_t used = clique.size();
    for (std::size_t v = 0; v < n; ++v) {
      if (c[v] >= 0) continue;
      std::vector<char> taken(n + 1, 0);
      for (auto w = g.neighbors(v).find_first(); w != Bitset::npos; w = g.neighbors(v).find_next(w))
        if (c[w] >= 0) taken[c[w]] = 1;
      int k = 0;
      while (taken[k]) ++k;
      c[v] = k;
      used = std::max(used, static_cast<std::size_t>(k) + 1);
    }
    best = used;
  }
  const std::size_t lower = clique.size();
  auto dsatur = [&](auto&& self, std::size_t used, std::size_t remaining) -> void {
    if (best == lower) return;
    if (remaining == 0) {
      best = std::min(best, used);
      return;
    }
    std::size_t pick = n, pick_sat = 0, pick_deg = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (colour[v] >= 0) continue;
      std::set<int> seen;
      std::size_t deg = 0;
      for (auto w = g.neighbors(v).find_first(); w != Bitset::npos; w = g.neighbors(v).find_next(w)) {
        if (colour[w] >= 0) seen.insert(colour[w]);
        else ++deg;
      }
      if (pick == n || seen.size() > pick_sat || (seen.size() == pick_sat && deg > pick_deg)) {
        pick = v;
        pick_sat = seen.size();
        pick_deg = deg;
      }
    }
    std::vector<char> taken(used + 1, 0);
    for (auto w = g.neighbors(pick).find_first(); w != Bitset::npos; w = g.neighbors(pick).find_next(w))
      if (colour[w] >= 0) taken[colour[w]] = 1;
    for (std::size_t k = 0; k <= used && k + 1 < best; ++k) {
      if (taken[k]) continue;
      colour[pick] = static_cast<int>(k);
      self(self, std::max(used, k + 1), remaining - 1);
      colour[pick] = -1;
      if (best == lower) return;
    }
  };
  dsatur(dsatur, clique.size(), n - clique.size());
  return best;
}

struct CliqueChromatic {
  std::size_t clique_number = 0;
  std::size_t chromatic_number = 0;
};

inline CliqueChromatic clique_and_chromatic(const SimpleGraph& g) {
  return {maximum_clique(g).size(), chromatic_number(g)};
}

// ---------------------------------------------------------------------------
// Digraph connectivity

struct Connectivity {
  bool is_strongly_connected = false;
  bool is_complete_digraph = false;
  /// Unset at or above 64 vertices.
  std::optional<bool> has_hamiltonian_cycle;
};

inline bool is_strongly_connected(const Digraph& d) {
  if (d.size() <= 1) return true;
  auto reach_all = [&](bool forward) {
    Bitset seen(d.size());
    std::vector<std::size_t> stack{0};
    seen.set(0);
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      const Bitset& next = forward ? d.successors(v) : d.predecessors(v);
      for (auto w = next.find_first(); w != Bitset::npos; w = next.find_next(w))
        if (!seen.test(w)) {
          seen.set(w);
          stack.push_back(w);
        }
    }
    return seen.all();
  };
  return reach_all(true) && reach_all(false);
}

/// One vertex counts as Hamiltonian (empty cycle); two vertices need arcs
/// both ways.
inline bool has_hamiltonian_cycle(const Digraph& d) {
  const std::size_t n = d.size();
  if (n >= kMaxHamiltonianVertices) throw SizeError("has_hamiltonian_cycle: limited to fewer than 64 vertices");
  if (n <= 1) return true;
  if (!is_strongly_connected(d)) return false;
  std::vector<std::size_t> path{0};
  Bitset visited(n);
  visited.set(0);
  auto extend = [&](auto&& self) -> bool {
    const auto v = path.back();
    if (path.size() == n) return d.has_arc(v, 0);
    for (auto w = d.successors(v).find_first(); w != Bitset::npos; w = d.successors(v).find_next(w)) {
      if (visited.test(w)) continue;
      visited.set(w);
      path.push_back(w);
      if (self(self)) return true;
      path.pop_back();
      visited.reset(w);
    }
    return false;
  };
  return extend(extend);
}

inline Connectivity digraph_connectivity(const Digraph& d) {
  Connectivity c;
  const std::size_t n = d.size();
  c.is_strongly_connected = is_strongly_connected(d);
  c.is_complete_digraph = d.arc_count() == n * (n > 0 ? n - 1 : 0);
  if (n < kMaxHamiltonianVertices) c.has_hamiltonian_cycle = has_hamiltonian_cycle(d);
  return c;
}

/// Smallest vertex with an arc to every other vertex.
inline std::optional<std::size_t> single_point_basis(const Digraph& d) {
  if (!is_transitively_closed(d)) throw ContractError("single_point_basis: digraph must be transitively closed");
  for (std::size_t v = 0; v < d.size(); ++v)
    if (d.successors(v).count() + 1 == d.size()) return v;
  return std::nullopt;
}

}  // namespace endograph
