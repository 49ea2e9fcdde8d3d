#pragma once

// Endomorphisms and automorphisms by backtracking over generator images,
// plus the reachability preorder and the two element partitions it induces.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "endograph/errors.hpp"
#include "endograph/group.hpp"
#include "endograph/numtheory.hpp"

namespace endograph {

/// A verified endomorphism: images[x] is the image of element x.
struct Mapping {
  std::string group_label;
  std::vector<Element> images;

  Element operator()(Element x) const { return images[x]; }
  friend bool operator==(const Mapping& a, const Mapping& b) { return a.images == b.images; }
  friend auto operator<=>(const Mapping& a, const Mapping& b) { return a.images <=> b.images; }
};

/// x*y maps to something other than f(x)*f(y).
struct Violation {
  Element x = 0;
  Element y = 0;
  Element image_of_product = 0;
  Element product_of_images = 0;
};

inline std::variant<Mapping, Violation> verify_homomorphism(const FiniteGroup& g,
                                                            std::vector<Element> images) {
  const std::size_t n = g.order();
  if (images.size() != n) {
    throw ParameterError("verify_homomorphism: expected " + std::to_string(n) + " images, got " +
                         std::to_string(images.size()));
  }
  for (Element v : images)
    if (v >= n) throw ParameterError("verify_homomorphism: image index out of range");
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) {
      const Element lhs = images[g.mul(x, y)];
      const Element rhs = g.mul(images[x], images[y]);
      if (lhs != rhs) return Violation{x, y, lhs, rhs};
    }
  return Mapping{g.label(), std::move(images)};
}

/// x -> g(f(x)): apply f first.
inline Mapping compose(const Mapping& f, const Mapping& g) {
  Mapping out{f.group_label, std::vector<Element>(f.images.size())};
  for (std::size_t x = 0; x < f.images.size(); ++x) out.images[x] = g.images[f.images[x]];
  return out;
}

inline bool is_bijective(const Mapping& f) {
  std::vector<char> hit(f.images.size(), 0);
  for (Element v : f.images) {
    if (hit[v]) return false;
    hit[v] = 1;
  }
  return true;
}

struct EnumerationLimits {
  std::size_t max_order = 512;
  /// Bound on the product, over generators, of the number of admissible
  /// images (elements whose order divides the generator's order).
  std::uint64_t max_candidates = std::uint64_t{1} << 18;
};

namespace detail {

/// Breadth-first spanning data for the chain H_1 < H_2 < ... where
/// H_i = <s_1..s_i>.  Every non-identity element x gets parent[x] and
/// via[x] = t with x = parent[x] * s_t, and t never exceeds x's level.
struct GeneratorTree {
  std::vector<Element> gens;
  std::vector<Element> discovery;          // identity first
  std::vector<std::size_t> level_end;      // discovery[0, level_end[i]) = H_{i+1}
  std::vector<Element> parent;
  std::vector<std::uint32_t> via;
  std::vector<std::uint32_t> level;        // 1-based level; 0 for the identity

  explicit GeneratorTree(const FiniteGroup& g) : gens(g.generators().begin(), g.generators().end()) {
    const std::size_t n = g.order();
    parent.assign(n, kNoElement);
    via.assign(n, 0);
    level.assign(n, 0);
    std::vector<char> seen(n, 0);
    discovery.push_back(0);
    seen[0] = 1;
    for (std::uint32_t i = 0; i < gens.size(); ++i) {
      // Re-scan everything found so far with the enlarged generator list.
      for (std::size_t k = 0; k < discovery.size(); ++k) {
        const Element x = discovery[k];
        for (std::uint32_t t = 0; t <= i; ++t) {
          const Element y = g.mul(x, gens[t]);
          if (seen[y]) continue;
          seen[y] = 1;
          parent[y] = x;
          via[y] = t;
          level[y] = i + 1;
          discovery.push_back(y);
        }
      }
      level_end.push_back(discovery.size());
    }
  }
};

inline std::uint64_t candidate_estimate(const FiniteGroup& g, bool bijective_only) {
  std::uint64_t total = 1;
  for (Element s : g.generators()) {
    std::uint64_t count = 0;
    for (Element y = 0; y < g.order(); ++y) {
      const auto oy = g.order_of(y), os = g.order_of(s);
      if (bijective_only ? oy == os : os % oy == 0) ++count;
    }
    total *= std::max<std::uint64_t>(count, 1);
    if (total > (std::uint64_t{1} << 62) / std::max<std::size_t>(g.order(), 1)) return total;
  }
  return total;
}

}  // namespace detail

inline bool enumeration_feasible(const FiniteGroup& g, const EnumerationLimits& limits = {}) {
  return g.order() <= limits.max_order && detail::candidate_estimate(g, false) <= limits.max_candidates;
}

/// Calls visit(std::span<const Element> images) once per endomorphism (or
/// automorphism when `bijective_only`), in a deterministic order.
template <class Visit>
void for_each_endomorphism(const FiniteGroup& g, Visit&& visit, const EnumerationLimits& limits = {},
                           bool bijective_only = false) {
  if (g.order() > limits.max_order) {
    throw SizeError("endomorphism enumeration: order " + std::to_string(g.order()) + " exceeds cap " +
                    std::to_string(limits.max_order) + "; use the abelian reachability fast path");
  }
  const std::uint64_t estimate = detail::candidate_estimate(g, bijective_only);
  if (estimate > limits.max_candidates) {
    throw SizeError("endomorphism enumeration: " + std::to_string(estimate) +
                    " generator-image candidates exceed cap " + std::to_string(limits.max_candidates) +
                    "; use the abelian reachability fast path");
  }
  const detail::GeneratorTree tree(g);
  const std::size_t n = g.order();
  const std::size_t k = tree.gens.size();

  std::vector<std::vector<Element>> choices(k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto os = g.order_of(tree.gens[i]);
    for (Element y = 0; y < n; ++y) {
      const auto oy = g.order_of(y);
      if (bijective_only ? oy == os : os % oy == 0) choices[i].push_back(y);
    }
  }

  std::vector<Element> f(n, 0);
  std::vector<Element> gen_image(k, 0);

  // Extends f to H_{i+1} from the images of s_1..s_{i+1} and checks the
  // relation f(x s_t) = f(x) f(s_t) for every pair not checked at a lower level.
  auto extend_and_check = [&](std::size_t i) {
    const std::size_t begin = i == 0 ? 1 : tree.level_end[i - 1];
    const std::size_t end = tree.level_end[i];
    for (std::size_t idx = begin; idx < end; ++idx) {
      const Element x = tree.discovery[idx];
      f[x] = g.mul(f[tree.parent[x]], gen_image[tree.via[x]]);
    }
    for (std::size_t idx = 0; idx < end; ++idx) {
      const Element x = tree.discovery[idx];
      const bool new_here = idx >= begin;
      for (std::size_t t = new_here ? 0 : i; t <= i; ++t) {
        if (f[g.mul(x, tree.gens[t])] != g.mul(f[x], gen_image[t])) return false;
      }
    }
    return true;
  };

  auto is_injective = [&] {
    std::vector<char> hit(n, 0);
    for (Element v : f) {
      if (hit[v]) return false;
      hit[v] = 1;
    }
    return true;
  };

  auto recurse = [&](auto&& self, std::size_t i) -> void {
    if (i == k) {
      if (bijective_only && !is_injective()) return;
      visit(std::span<const Element>(f));
      return;
    }
    for (Element y : choices[i]) {
      gen_image[i] = y;
      if (extend_and_check(i)) self(self, i + 1);
    }
  };
  f[0] = 0;
  recurse(recurse, 0);
}

inline std::vector<Mapping> enumerate_endomorphisms(const FiniteGroup& g, const EnumerationLimits& limits = {}) {
  std::vector<Mapping> out;
  for_each_endomorphism(
      g, [&](std::span<const Element> im) { out.push_back({g.label(), {im.begin(), im.end()}}); }, limits);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Mapping> enumerate_automorphisms(const FiniteGroup& g, const EnumerationLimits& limits = {}) {
  std::vector<Mapping> out;
  for_each_endomorphism(
      g, [&](std::span<const Element> im) { out.push_back({g.label(), {im.begin(), im.end()}}); }, limits,
      true);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Partitions and the reachability relation

struct Partition {
  std::string group_label;
  std::vector<ElementSet> blocks;        // sorted by smallest element
  std::vector<std::size_t> block_of;     // element -> block index

  Element representative(std::size_t block) const { return blocks[block].front(); }
  std::size_t size() const { return blocks.size(); }
};

namespace detail {

/// Builds a Partition from any element -> key assignment.
template <class Key>
Partition partition_by_key(const std::string& label, const std::vector<Key>& key) {
  Partition p;
  p.group_label = label;
  p.block_of.assign(key.size(), 0);
  std::map<Key, std::size_t> index;
  for (Element x = 0; x < key.size(); ++x) {
    auto [it, fresh] = index.emplace(key[x], p.blocks.size());
    if (fresh) p.blocks.emplace_back();
    p.blocks[it->second].push_back(x);
    p.block_of[x] = it->second;
  }
  return p;
}

inline Partition partition_from_union_find(const std::string& label, std::vector<Element> parent) {
  auto find = [&](Element x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<Element> root(parent.size());
  for (Element x = 0; x < parent.size(); ++x) root[x] = find(x);
  // Roots are not necessarily minimal; key on the minimal member instead.
  std::vector<Element> min_member(parent.size(), kNoElement);
  for (Element x = 0; x < parent.size(); ++x) min_member[root[x]] = std::min(min_member[root[x]], x);
  std::vector<Element> key(parent.size());
  for (Element x = 0; x < parent.size(); ++x) key[x] = min_member[root[x]];
  return partition_by_key(label, key);
}

}  // namespace detail

struct ReachRelation {
  std::string group_label;
  std::vector<boost::dynamic_bitset<std::uint64_t>> rows;

  std::size_t size() const { return rows.size(); }
  bool operator()(Element x, Element y) const { return rows[x].test(y); }
};

/// Coordinates of every element with respect to an abelian basis.
class AbelianCoordinates {
 public:
  explicit AbelianCoordinates(const FiniteGroup& g) {
    if (!g.abelian_basis()) throw ContractError("AbelianCoordinates: group carries no abelian basis");
    const auto& basis = *g.abelian_basis();
    orders_ = basis.orders;
    coords_.assign(g.order(), std::vector<std::uint32_t>(orders_.size(), 0));
    std::vector<std::uint32_t> c(orders_.size(), 0);
    std::vector<char> seen(g.order(), 0);
    while (true) {
      Element x = 0;
      for (std::size_t j = 0; j < c.size(); ++j) x = g.mul(x, g.power(basis.elements[j], c[j]));
      if (seen[x]) throw ContractError("AbelianCoordinates: basis is not independent");
      seen[x] = 1;
      coords_[x] = c;
      std::size_t j = 0;
      while (j < c.size() && ++c[j] == orders_[j]) c[j++] = 0;
      if (j == c.size()) break;
    }
  }

  const std::vector<std::uint32_t>& of(Element x) const { return coords_[x]; }
  const std::vector<std::uint32_t>& orders() const { return orders_; }

 private:
  std::vector<std::uint32_t> orders_;
  std::vector<std::vector<std::uint32_t>> coords_;
};

/// Exact reachability for groups with an abelian basis b_j of orders n_j:
/// the endomorphism images of x = sum x_j b_j are exactly the sumset of the
/// sets x_j * G[n_j], where G[n] = {y : ord(y) | n}.
inline ReachRelation abelian_reachability(const FiniteGroup& g) {
  const AbelianCoordinates coords(g);
  const std::size_t n = g.order();
  const auto& orders = coords.orders();
  std::vector<std::vector<Element>> torsion(orders.size());
  for (std::size_t j = 0; j < orders.size(); ++j)
    for (Element y = 0; y < n; ++y)
      if (orders[j] % g.order_of(y) == 0) torsion[j].push_back(y);

  ReachRelation rel{g.label(), std::vector<boost::dynamic_bitset<std::uint64_t>>(n)};
  boost::dynamic_bitset<std::uint64_t> scaled(n), next(n);
  for (Element x = 0; x < n; ++x) {
    boost::dynamic_bitset<std::uint64_t> sum(n);
    sum.set(0);
    for (std::size_t j = 0; j < orders.size(); ++j) {
      const std::uint32_t xj = coords.of(x)[j];
      if (xj == 0) continue;
      scaled.reset();
      for (Element y : torsion[j]) scaled.set(g.power(y, xj));
      next.reset();
      for (auto a = sum.find_first(); a != sum.npos; a = sum.find_next(a))
        for (auto b = scaled.find_first(); b != scaled.npos; b = scaled.find_next(b))
          next.set(g.mul(static_cast<Element>(a), static_cast<Element>(b)));
      sum = next;
    }
    rel.rows[x] = std::move(sum);
  }
  return rel;
}

inline ReachRelation enumerated_reachability(const FiniteGroup& g, const EnumerationLimits& limits = {}) {
  const std::size_t n = g.order();
  ReachRelation rel{g.label(), std::vector<boost::dynamic_bitset<std::uint64_t>>(n, boost::dynamic_bitset<std::uint64_t>(n))};
  for_each_endomorphism(
      g,
      [&](std::span<const Element> im) {
        for (Element x = 0; x < n; ++x) rel.rows[x].set(im[x]);
      },
      limits);
  return rel;
}

/// Enumerates when feasible, otherwise falls back to the abelian sumset
/// formula; non-abelian groups beyond the caps raise SizeError.
inline ReachRelation endo_reachability(const FiniteGroup& g, const EnumerationLimits& limits = {}) {
  if (enumeration_feasible(g, limits)) return enumerated_reachability(g, limits);
  if (g.abelian_basis()) return abelian_reachability(g);
  return enumerated_reachability(g, limits);  // throws with the reason
}

inline Partition endomorphism_classes(const FiniteGroup& g, const ReachRelation& rel) {
  std::vector<Element> key(g.order(), kNoElement);
  for (Element x = 0; x < g.order(); ++x) {
    if (key[x] != kNoElement) continue;
    for (Element y = x; y < g.order(); ++y)
      if (key[y] == kNoElement && rel(x, y) && rel(y, x)) key[y] = x;
  }
  return detail::partition_by_key(g.label(), key);
}

inline Partition endomorphism_classes(const FiniteGroup& g, const EnumerationLimits& limits = {}) {
  return endomorphism_classes(g, endo_reachability(g, limits));
}

/// Aut orbits of a finite abelian group: x and y share an orbit iff, for
/// every prime p, their p-components have the same height sequence.
inline Partition abelian_automorphism_orbits(const FiniteGroup& g) {
  if (!g.abelian_basis()) throw ContractError("abelian_automorphism_orbits: group carries no abelian basis");
  const std::size_t n = g.order();
  std::vector<std::vector<int>> signature(n);
  if (n == 1) return detail::partition_by_key(g.label(), signature);
  for (const auto& pp : numtheory::factorize(n)) {
    const std::uint64_t q = pp.value(), m = n / q;
    // c = 1 mod q, c = 0 mod m projects onto the p-primary component.
    const std::uint64_t c = m * numtheory::inverse_mod(m % q, q) % n;
    // heights: the largest k with z in p^k G.
    std::vector<int> height(n, 0);
    std::vector<char> in(n, 1);
    for (int k = 1; k <= static_cast<int>(pp.multiplicity); ++k) {
      std::vector<char> next(n, 0);
      for (Element z = 0; z < n; ++z)
        if (in[z]) next[g.power(z, pp.prime)] = 1;
      in.swap(next);
      for (Element z = 0; z < n; ++z)
        if (in[z]) height[z] = k;
    }
    for (Element x = 0; x < n; ++x) {
      Element z = g.power(x, c);
      auto& sig = signature[x];
      sig.push_back(-static_cast<int>(pp.prime));  // separator
      while (z != 0) {
        sig.push_back(height[z]);
        z = g.power(z, pp.prime);
      }
    }
  }
  return detail::partition_by_key(g.label(), signature);
}

inline Partition automorphism_orbits(const FiniteGroup& g, const EnumerationLimits& limits = {}) {
  if (g.abelian_basis() && detail::candidate_estimate(g, true) > limits.max_candidates) {
    return abelian_automorphism_orbits(g);
  }
  std::vector<Element> parent(g.order());
  std::iota(parent.begin(), parent.end(), Element{0});
  auto find = [&](Element x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for_each_endomorphism(
      g,
      [&](std::span<const Element> im) {
        for (Element x = 0; x < im.size(); ++x) {
          const Element a = find(x), b = find(im[x]);
          if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
      },
      limits, true);
  return detail::partition_from_union_find(g.label(), std::move(parent));
}

struct KernelImage {
  ElementSet kernel;
  ElementSet image;
};

inline KernelImage kernel_and_image(const FiniteGroup& g, const Mapping& f) {
  if (f.images.size() != g.order()) throw ContractError("kernel_and_image: mapping does not belong to this group");
  KernelImage out;
  std::vector<char> hit(g.order(), 0);
  for (Element x = 0; x < g.order(); ++x) {
    if (f(x) == 0) out.kernel.push_back(x);
    hit[f(x)] = 1;
  }
  for (Element y = 0; y < g.order(); ++y)
    if (hit[y]) out.image.push_back(y);
  if (!is_normal_subgroup(g, out.kernel) || !is_subgroup(g, out.image) ||
      out.kernel.size() * out.image.size() != g.order()) {
    throw ContractError("kernel_and_image: mapping is not an endomorphism");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Abelian arrow criteria

/// Whether some endomorphism of prod Z_{p^{m_i}} maps an element with
/// coordinate valuations b to one with valuations c (valuation m_i encodes
/// a zero coordinate).  Holds iff for every i some j has
/// b_j + max(0, m_i - m_j) <= c_i.
inline bool abelian_p_arrow(std::span<const unsigned> profile, std::uint64_t p, std::span<const unsigned> b,
                            std::span<const unsigned> c) {
  if (!numtheory::is_prime(p)) throw ParameterError("abelian_p_arrow: p must be prime");
  if (b.size() != profile.size() || c.size() != profile.size()) {
    throw ParameterError("abelian_p_arrow: exponent vectors must match the profile length");
  }
  if (!std::is_sorted(profile.begin(), profile.end())) {
    throw ParameterError("abelian_p_arrow: exponent profile must be nondecreasing");
  }
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (b[i] > profile[i] || c[i] > profile[i]) {
      throw ParameterError("abelian_p_arrow: exponents must satisfy 0 <= b_i, c_i <= m_i");
    }
  }
  for (std::size_t i = 0; i < profile.size(); ++i) {
    bool found = false;
    for (std::size_t j = 0; j < profile.size() && !found; ++j) {
      const unsigned lift = profile[i] > profile[j] ? profile[i] - profile[j] : 0;
      found = b[j] + lift <= c[i];
    }
    if (!found) return false;
  }
  return true;
}

/// Prime-power orders of the primary decomposition of an abelian basis,
/// grouped by prime (ascending) with orders ascending.
inline std::map<std::uint64_t, std::vector<std::uint32_t>> primary_invariants(const FiniteGroup& g) {
  if (!g.abelian_basis()) throw ContractError("primary_invariants: group carries no abelian basis");
  std::map<std::uint64_t, std::vector<std::uint32_t>> out;
  for (auto order : g.abelian_basis()->orders) {
    if (order == 1) continue;
    for (const auto& pp : numtheory::factorize(order)) out[pp.prime].push_back(static_cast<std::uint32_t>(pp.value()));
  }
  for (auto& [p, v] : out) std::sort(v.begin(), v.end());
  return out;
}

/// Every prime's cyclic factors have equal order: G = prod (Z_{p_i^{n_i}})^{m_i}.
inline bool is_homocyclic_product(const FiniteGroup& g) {
  if (!g.abelian_basis()) return false;
  for (const auto& [p, v] : primary_invariants(g))
    if (v.front() != v.back()) return false;
  return true;
}

/// On groups of shape prod (Z_{p_i^{n_i}})^{m_i}, x reaches y exactly when
/// ord(y) divides ord(x).
inline bool homocyclic_arrow(const FiniteGroup& g, Element x, Element y) {
  if (!is_homocyclic_product(g)) {
    throw ParameterError("homocyclic_arrow: group must be a product of homocyclic p-groups");
  }
  if (x >= g.order() || y >= g.order()) throw std::out_of_range("homocyclic_arrow: index out of range");
  return g.order_of(x) % g.order_of(y) == 0;
}

}  // namespace endograph
