#pragma once

// Digraphs on group elements: endomorphism/automorphism digraphs, their
// symmetrisations and condensations, strong products, and isomorphism tests
// aimed at preorders.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "endograph/errors.hpp"
#include "endograph/group.hpp"
#include "endograph/hom.hpp"

namespace endograph {

using Bitset = boost::dynamic_bitset<std::uint64_t>;
using Arc = std::pair<std::size_t, std::size_t>;

inline constexpr std::size_t kMaxIsomorphismVertices = 2000;
inline constexpr std::size_t kMaxFallbackVertices = 64;
inline constexpr std::size_t kMaxProductVertices = 10'000;

/// Loop-free digraph with one successor and one predecessor bitset per vertex.
class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(std::vector<std::string> labels)
      : labels_(std::move(labels)), out_(labels_.size(), Bitset(labels_.size())), in_(out_) {}

  static Digraph unlabeled(std::size_t n) {
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
    return Digraph(std::move(labels));
  }

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t v) const { return labels_[v]; }
  const std::vector<std::string>& labels() const { return labels_; }

  void add_arc(std::size_t x, std::size_t y) {
    if (x >= size() || y >= size()) throw std::out_of_range("add_arc: endpoint out of range");
    if (x == y) throw ContractError("add_arc: loops are not allowed");
    out_[x].set(y);
    in_[y].set(x);
  }

  bool has_arc(std::size_t x, std::size_t y) const { return out_[x].test(y); }
  const Bitset& successors(std::size_t x) const { return out_[x]; }
  const Bitset& predecessors(std::size_t x) const { return in_[x]; }

  std::size_t arc_count() const {
    std::size_t total = 0;
    for (const auto& row : out_) total += row.count();
    return total;
  }

  /// Lexicographically sorted arcs.
  std::vector<Arc> arcs() const {
    std::vector<Arc> out;
    for (std::size_t x = 0; x < size(); ++x)
      for (auto y = out_[x].find_first(); y != Bitset::npos; y = out_[x].find_next(y)) out.emplace_back(x, y);
    return out;
  }

  friend bool operator==(const Digraph& a, const Digraph& b) { return a.out_ == b.out_; }

 private:
  std::vector<std::string> labels_;
  std::vector<Bitset> out_;
  std::vector<Bitset> in_;
};

/// Simple undirected graph; adjacency rows are symmetric.
class SimpleGraph {
 public:
  SimpleGraph() = default;
  explicit SimpleGraph(std::vector<std::string> labels)
      : labels_(std::move(labels)), adj_(labels_.size(), Bitset(labels_.size())) {}

  static SimpleGraph unlabeled(std::size_t n) {
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
    return SimpleGraph(std::move(labels));
  }

  static SimpleGraph complete(std::size_t n) {
    SimpleGraph g = unlabeled(n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = x + 1; y < n; ++y) g.add_edge(x, y);
    return g;
  }

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t v) const { return labels_[v]; }
  const std::vector<std::string>& labels() const { return labels_; }

  void add_edge(std::size_t x, std::size_t y) {
    if (x >= size() || y >= size()) throw std::out_of_range("add_edge: endpoint out of range");
    if (x == y) throw ContractError("add_edge: loops are not allowed");
    adj_[x].set(y);
    adj_[y].set(x);
  }

  bool has_edge(std::size_t x, std::size_t y) const { return adj_[x].test(y); }
  const Bitset& neighbors(std::size_t x) const { return adj_[x]; }
  std::size_t degree(std::size_t x) const { return adj_[x].count(); }

  std::size_t edge_count() const {
    std::size_t total = 0;
    for (const auto& row : adj_) total += row.count();
    return total / 2;
  }

  /// Edges {x,y} with x < y, sorted.
  std::vector<Arc> edges() const {
    std::vector<Arc> out;
    for (std::size_t x = 0; x < size(); ++x)
      for (auto y = adj_[x].find_next(x); y != Bitset::npos; y = adj_[x].find_next(y)) out.emplace_back(x, y);
    return out;
  }

  friend bool operator==(const SimpleGraph& a, const SimpleGraph& b) { return a.adj_ == b.adj_; }

 private:
  std::vector<std::string> labels_;
  std::vector<Bitset> adj_;
};

/// Quotient digraph on the blocks of a partition; vertex i stands for the
/// block of representatives[i] and carries its size.
struct CondensedDigraph {
  std::string group_label;
  std::vector<Element> representatives;
  std::vector<std::size_t> sizes;
  Digraph digraph;

  std::size_t size() const { return sizes.size(); }
};

// ---------------------------------------------------------------------------
// Constructions

namespace detail {

inline std::vector<std::string> element_labels(const FiniteGroup& g) {
  std::vector<std::string> labels;
  labels.reserve(g.order());
  for (Element x = 0; x < g.order(); ++x) labels.push_back(g.element_name(x));
  return labels;
}

}  // namespace detail

inline Digraph endo_digraph(const FiniteGroup& g, const ReachRelation& rel) {
  Digraph d(detail::element_labels(g));
  for (Element x = 0; x < g.order(); ++x)
    for (auto y = rel.rows[x].find_first(); y != Bitset::npos; y = rel.rows[x].find_next(y))
      if (y != x) d.add_arc(x, y);
  return d;
}

inline Digraph endo_digraph(const FiniteGroup& g, const EnumerationLimits& limits = {}) {
  return endo_digraph(g, endo_reachability(g, limits));
}

inline Digraph auto_digraph(const FiniteGroup& g, const Partition& orbits) {
  Digraph d(detail::element_labels(g));
  for (const auto& block : orbits.blocks)
    for (Element x : block)
      for (Element y : block)
        if (x != y) d.add_arc(x, y);
  return d;
}

inline Digraph auto_digraph(const FiniteGroup& g, const EnumerationLimits& limits = {}) {
  return auto_digraph(g, automorphism_orbits(g, limits));
}

inline SimpleGraph symmetrise(const Digraph& d) {
  SimpleGraph s(d.labels());
  for (const auto& [x, y] : d.arcs()) s.add_edge(x, y);
  return s;
}

/// Induced subgraph on vertices 1..n-1 (vertex 0 is the identity).
inline Digraph delete_identity(const Digraph& d) {
  if (d.size() == 0) return d;
  Digraph out(std::vector<std::string>(d.labels().begin() + 1, d.labels().end()));
  for (const auto& [x, y] : d.arcs())
    if (x != 0 && y != 0) out.add_arc(x - 1, y - 1);
  return out;
}

inline SimpleGraph delete_identity(const SimpleGraph& s) {
  if (s.size() == 0) return s;
  SimpleGraph out(std::vector<std::string>(s.labels().begin() + 1, s.labels().end()));
  for (const auto& [x, y] : s.edges())
    if (x != 0 && y != 0) out.add_edge(x - 1, y - 1);
  return out;
}

/// Quotient of the reachability relation by `blocks`, optionally dropping
/// the identity's block.  Arcs are read off block representatives, which is
/// exact whenever the blocks refine the endomorphism classes.
inline CondensedDigraph condense(const FiniteGroup& g, const ReachRelation& rel, const Partition& blocks,
                                 bool drop_identity) {
  CondensedDigraph c;
  c.group_label = g.label();
  std::vector<std::string> labels;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (drop_identity && blocks.representative(b) == 0) continue;
    c.representatives.push_back(blocks.representative(b));
    c.sizes.push_back(blocks.blocks[b].size());
    labels.push_back("[" + g.element_name(blocks.representative(b)) + "]");
  }
  c.digraph = Digraph(std::move(labels));
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j)
      if (i != j && rel(c.representatives[i], c.representatives[j])) c.digraph.add_arc(i, j);
  return c;
}

/// Identity deleted, automorphism orbits contracted.
inline CondensedDigraph compress(const FiniteGroup& g, const EnumerationLimits& limits = {}) {
  return condense(g, endo_reachability(g, limits), automorphism_orbits(g, limits), true);
}

/// Quotient by endomorphism classes (identity kept): a strict partial order.
inline CondensedDigraph condense_endo_classes(const FiniteGroup& g, const EnumerationLimits& limits = {}) {
  const auto rel = endo_reachability(g, limits);
  return condense(g, rel, endomorphism_classes(g, rel), false);
}

/// Vertex (x, y) has index x * |V2| + y.
inline Digraph strong_product(const Digraph& d1, const Digraph& d2, std::size_t max_vertices = kMaxProductVertices) {
  const std::size_t n1 = d1.size(), n2 = d2.size();
  if (n1 * n2 > max_vertices) {
    throw SizeError("strong_product: " + std::to_string(n1 * n2) + " vertices exceed cap " +
                    std::to_string(max_vertices));
  }
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < n1; ++x)
    for (std::size_t y = 0; y < n2; ++y) labels.push_back("(" + d1.label(x) + "," + d2.label(y) + ")");
  Digraph p(std::move(labels));
  for (std::size_t x = 0; x < n1; ++x)
    for (std::size_t y = 0; y < n2; ++y)
      for (std::size_t x2 = 0; x2 < n1; ++x2)
        for (std::size_t y2 = 0; y2 < n2; ++y2) {
          const bool sx = x == x2, sy = y == y2;
          const bool ax = d1.has_arc(x, x2), ay = d2.has_arc(y, y2);
          if ((sx && ay) || (ax && sy) || (ax && ay)) p.add_arc(x * n2 + y, x2 * n2 + y2);
        }
  return p;
}

/// Loopless transitivity: x->y and y->z with x != z imply x->z.
inline bool is_transitively_closed(const Digraph& d) {
  for (std::size_t x = 0; x < d.size(); ++x) {
    for (auto y = d.successors(x).find_first(); y != Bitset::npos; y = d.successors(x).find_next(y)) {
      Bitset reach = d.successors(y);
      reach.reset(x);
      if (!reach.is_subset_of(d.successors(x))) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Isomorphism

namespace detail {

/// Stable colouring of the disjoint union of a and b, starting from the
/// given vertex colours and refining by (out, in) neighbour colour multisets.
inline std::pair<std::vector<std::size_t>, std::vector<std::size_t>> refine_colours(
    const Digraph& a, const std::vector<std::uint64_t>& ca, const Digraph& b, const std::vector<std::uint64_t>& cb) {
  const std::size_t n = a.size();
  std::vector<std::size_t> colour(2 * n);
  {
    std::map<std::vector<std::uint64_t>, std::size_t> ids;
    for (std::size_t v = 0; v < 2 * n; ++v) {
      const Digraph& d = v < n ? a : b;
      const std::size_t u = v % n;
      std::vector<std::uint64_t> key{v < n ? ca[u] : cb[u], d.successors(u).count(), d.predecessors(u).count()};
      colour[v] = ids.emplace(key, ids.size()).first->second;
    }
  }
  std::size_t classes = 0;
  while (true) {
    std::map<std::vector<std::size_t>, std::size_t> ids;
    std::vector<std::size_t> next(2 * n);
    for (std::size_t v = 0; v < 2 * n; ++v) {
      const Digraph& d = v < n ? a : b;
      const std::size_t u = v % n, offset = v < n ? 0 : n;
      std::vector<std::size_t> outs, ins;
      for (auto w = d.successors(u).find_first(); w != Bitset::npos; w = d.successors(u).find_next(w))
        outs.push_back(colour[w + offset]);
      for (auto w = d.predecessors(u).find_first(); w != Bitset::npos; w = d.predecessors(u).find_next(w))
        ins.push_back(colour[w + offset]);
      std::sort(outs.begin(), outs.end());
      std::sort(ins.begin(), ins.end());
      std::vector<std::size_t> key{colour[v], outs.size()};
      key.insert(key.end(), outs.begin(), outs.end());
      key.push_back(ins.size());
      key.insert(key.end(), ins.begin(), ins.end());
      next[v] = ids.emplace(std::move(key), ids.size()).first->second;
    }
    colour.swap(next);
    if (ids.size() == classes) break;
    classes = ids.size();
  }
  return {std::vector<std::size_t>(colour.begin(), colour.begin() + n),
          std::vector<std::size_t>(colour.begin() + n, colour.end())};
}

inline bool verify_isomorphism(const Digraph& a, const Digraph& b, const std::vector<std::size_t>& phi) {
  if (a.size() != b.size() || phi.size() != a.size()) return false;
  std::vector<char> used(b.size(), 0);
  for (auto v : phi) {
    if (v >= b.size() || used[v]) return false;
    used[v] = 1;
  }
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < a.size(); ++y)
      if (x != y && a.has_arc(x, y) != b.has_arc(phi[x], phi[y])) return false;
  return true;
}

/// Colour-preserving digraph isomorphism by refinement and backtracking.
inline std::optional<std::vector<std::size_t>> coloured_isomorphism(const Digraph& a,
                                                                    const std::vector<std::uint64_t>& ca,
                                                                    const Digraph& b,
                                                                    const std::vector<std::uint64_t>& cb) {
  const std::size_t n = a.size();
  if (n != b.size() || a.arc_count() != b.arc_count()) return std::nullopt;
  if (n == 0) return std::vector<std::size_t>{};
  auto [col_a, col_b] = refine_colours(a, ca, b, cb);
  {
    auto sa = col_a, sb = col_b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }
  std::map<std::size_t, std::size_t> class_size;
  for (auto c : col_a) ++class_size[c];
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return class_size[col_a[x]] < class_size[col_a[y]];
  });

  std::vector<std::size_t> phi(n, n);
  std::vector<char> used(n, 0);
  auto consistent = [&](std::size_t depth, std::size_t v, std::size_t w) {
    for (std::size_t k = 0; k < depth; ++k) {
      const std::size_t u = order[k];
      if (a.has_arc(v, u) != b.has_arc(w, phi[u]) || a.has_arc(u, v) != b.has_arc(phi[u], w)) return false;
    }
    return true;
  };
  auto search = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == n) return true;
    const std::size_t v = order[depth];
    for (std::size_t w = 0; w < n; ++w) {
      if (used[w] || col_b[w] != col_a[v] || !consistent(depth, v, w)) continue;
      phi[v] = w;
      used[w] = 1;
      if (self(self, depth + 1)) return true;
      used[w] = 0;
    }
    phi[v] = n;
    return false;
  };
  if (!search(search, 0)) return std::nullopt;
  return phi;
}

/// Mutual-reachability classes of a transitively closed digraph.
inline std::vector<std::vector<std::size_t>> mutual_classes(const Digraph& d) {
  std::vector<std::vector<std::size_t>> classes;
  std::vector<char> done(d.size(), 0);
  for (std::size_t x = 0; x < d.size(); ++x) {
    if (done[x]) continue;
    std::vector<std::size_t> cls{x};
    done[x] = 1;
    for (std::size_t y = x + 1; y < d.size(); ++y)
      if (!done[y] && d.has_arc(x, y) && d.has_arc(y, x)) {
        cls.push_back(y);
        done[y] = 1;
      }
    classes.push_back(std::move(cls));
  }
  return classes;
}

}  // namespace detail

struct IsomorphismResult {
  bool isomorphic = false;
  /// witness[v] is the image in the second digraph of vertex v of the first.
  std::vector<std::size_t> witness;
};

/// Digraph isomorphism.  Transitively closed inputs (endomorphism digraphs)
/// reduce to weighted isomorphism of their condensations; anything else goes
/// through direct backtracking, limited to 64 vertices.
inline IsomorphismResult digraph_isomorphic(const Digraph& a, const Digraph& b) {
  if (a.size() > kMaxIsomorphismVertices || b.size() > kMaxIsomorphismVertices) {
    throw SizeError("digraph_isomorphic: inputs limited to 2000 vertices");
  }
  if (a.size() != b.size() || a.arc_count() != b.arc_count()) return {};
  std::optional<std::vector<std::size_t>> phi;
  if (is_transitively_closed(a) && is_transitively_closed(b)) {
    const auto ca = detail::mutual_classes(a), cb = detail::mutual_classes(b);
    if (ca.size() != cb.size()) return {};
    auto quotient = [](const Digraph& d, const std::vector<std::vector<std::size_t>>& cls) {
      Digraph q = Digraph::unlabeled(cls.size());
      for (std::size_t i = 0; i < cls.size(); ++i)
        for (std::size_t j = 0; j < cls.size(); ++j)
          if (i != j && d.has_arc(cls[i].front(), cls[j].front())) q.add_arc(i, j);
      return q;
    };
    std::vector<std::uint64_t> wa, wb;
    for (const auto& c : ca) wa.push_back(c.size());
    for (const auto& c : cb) wb.push_back(c.size());
    const auto block_map = detail::coloured_isomorphism(quotient(a, ca), wa, quotient(b, cb), wb);
    if (!block_map) return {};
    std::vector<std::size_t> map(a.size());
    for (std::size_t i = 0; i < ca.size(); ++i) {
      const auto& target = cb[(*block_map)[i]];
      for (std::size_t k = 0; k < ca[i].size(); ++k) map[ca[i][k]] = target[k];
    }
    phi = std::move(map);
  } else {
    if (a.size() > kMaxFallbackVertices) {
      throw SizeError("digraph_isomorphic: non-preorder inputs above 64 vertices are unsupported");
    }
    phi = detail::coloured_isomorphism(a, std::vector<std::uint64_t>(a.size(), 0), b,
                                       std::vector<std::uint64_t>(b.size(), 0));
    if (!phi) return {};
  }
  if (!detail::verify_isomorphism(a, b, *phi)) {
    throw ContractError("digraph_isomorphic: witness failed verification");
  }
  return {true, std::move(*phi)};
}

/// Undirected isomorphism, via the symmetric digraph of each graph.
inline IsomorphismResult graph_isomorphic(const SimpleGraph& a, const SimpleGraph& b) {
  auto as_digraph = [](const SimpleGraph& s) {
    Digraph d(s.labels());
    for (const auto& [x, y] : s.edges()) {
      d.add_arc(x, y);
      d.add_arc(y, x);
    }
    return d;
  };
  return digraph_isomorphic(as_digraph(a), as_digraph(b));
}

/// Isomorphism of condensed digraphs that also preserves block sizes.
inline IsomorphismResult strong_isomorphic(const CondensedDigraph& a, const CondensedDigraph& b) {
  if (a.size() != b.size()) return {};
  std::vector<std::uint64_t> wa(a.sizes.begin(), a.sizes.end()), wb(b.sizes.begin(), b.sizes.end());
  auto phi = detail::coloured_isomorphism(a.digraph, wa, b.digraph, wb);
  if (!phi) return {};
  if (!detail::verify_isomorphism(a.digraph, b.digraph, *phi)) {
    throw ContractError("strong_isomorphic: witness failed verification");
  }
  for (std::size_t v = 0; v < a.size(); ++v)
    if (a.sizes[v] != b.sizes[(*phi)[v]]) throw ContractError("strong_isomorphic: witness breaks block sizes");
  return {true, std::move(*phi)};
}

/// Disjoint union; vertices of b follow those of a.
inline SimpleGraph disjoint_union(const SimpleGraph& a, const SimpleGraph& b) {
  std::vector<std::string> labels = a.labels();
  labels.insert(labels.end(), b.labels().begin(), b.labels().end());
  SimpleGraph u(std::move(labels));
  for (const auto& [x, y] : a.edges()) u.add_edge(x, y);
  for (const auto& [x, y] : b.edges()) u.add_edge(a.size() + x, a.size() + y);
  return u;
}

}  // namespace endograph
