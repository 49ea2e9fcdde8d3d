#pragma once

// Finite groups as explicit multiplication tables over dense element
// indices.  Index 0 is always the identity.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "endograph/errors.hpp"
#include "endograph/numtheory.hpp"

namespace endograph {

using Element = std::uint32_t;
/// Sorted, duplicate-free list of element indices.
using ElementSet = std::vector<Element>;

inline constexpr Element kNoElement = std::numeric_limits<Element>::max();
inline constexpr std::size_t kDefaultMaxProductOrder = 10'000;
inline constexpr std::size_t kDefaultMaxNormalSubgroupOrder = 2'000;

/// Elements b_1..b_k such that G is the internal direct sum of the cyclic
/// subgroups <b_j>; only present on abelian groups built from cyclic factors.
struct AbelianBasis {
  std::vector<Element> elements;
  std::vector<std::uint32_t> orders;
};

class FiniteGroup {
 public:
  /// Wraps a raw row-major table.  No group axioms are checked here; use
  /// find_integrity_violation() for that.
  static FiniteGroup from_table(std::string label, std::size_t order, std::vector<Element> table,
                                std::vector<Element> generators,
                                std::vector<std::string> names = {},
                                std::optional<AbelianBasis> basis = std::nullopt) {
    if (order == 0) throw ParameterError("group order must be positive");
    if (table.size() != order * order) throw ParameterError("table size must be order^2");
    if (generators.empty()) generators.push_back(0);
    FiniteGroup g;
    g.label_ = std::move(label);
    g.order_ = order;
    g.table_ = std::move(table);
    g.generators_ = std::move(generators);
    g.names_ = std::move(names);
    g.basis_ = std::move(basis);
    g.compute_derived_tables();
    return g;
  }

  std::size_t order() const { return order_; }
  const std::string& label() const { return label_; }
  Element identity() const { return 0; }

  Element mul(Element x, Element y) const { return table_[static_cast<std::size_t>(x) * order_ + y]; }
  /// kNoElement when the table has no right inverse for x.
  Element inverse(Element x) const { return inverses_[x]; }
  /// 0 when the powers of x never reach the identity (corrupt table).
  std::uint32_t order_of(Element x) const { return orders_[x]; }

  Element power(Element x, std::uint64_t k) const {
    Element result = 0;
    Element base = x;
    while (k > 0) {
      if (k & 1U) result = mul(result, base);
      base = mul(base, base);
      k >>= 1U;
    }
    return result;
  }

  std::span<const Element> generators() const { return generators_; }
  std::span<const Element> table() const { return table_; }
  const std::optional<AbelianBasis>& abelian_basis() const { return basis_; }

  std::string element_name(Element x) const {
    if (x < names_.size()) return names_[x];
    return std::to_string(x);
  }

  bool is_abelian() const {
    for (Element x = 0; x < order_; ++x)
      for (Element y = x + 1; y < order_; ++y)
        if (mul(x, y) != mul(y, x)) return false;
    return true;
  }

  FiniteGroup with_generators(std::vector<Element> generators) const {
    FiniteGroup copy = *this;
    copy.generators_ = std::move(generators);
    if (copy.generators_.empty()) copy.generators_.push_back(0);
    return copy;
  }

  FiniteGroup with_label(std::string label) const {
    FiniteGroup copy = *this;
    copy.label_ = std::move(label);
    return copy;
  }

 private:
  FiniteGroup() = default;

  void compute_derived_tables() {
    inverses_.assign(order_, kNoElement);
    orders_.assign(order_, 0);
    for (Element x = 0; x < order_; ++x) {
      for (Element y = 0; y < order_; ++y) {
        const Element v = mul(x, y);
        if (v >= order_) break;
        if (v == 0) {
          inverses_[x] = y;
          break;
        }
      }
      Element p = x;
      for (std::uint32_t k = 1; k <= order_; ++k) {
        if (p == 0) {
          orders_[x] = k;
          break;
        }
        p = mul(p, x);
        if (p >= order_) break;
      }
    }
  }

  std::string label_;
  std::size_t order_ = 0;
  std::vector<Element> table_;
  std::vector<Element> inverses_;
  std::vector<std::uint32_t> orders_;
  std::vector<Element> generators_;
  std::vector<std::string> names_;
  std::optional<AbelianBasis> basis_;
};

// ---------------------------------------------------------------------------
// Basic queries

inline std::uint32_t element_order(const FiniteGroup& g, Element x) {
  if (x >= g.order()) throw std::out_of_range("element_order: index out of range");
  return g.order_of(x);
}

inline ElementSet centralizer(const FiniteGroup& g, Element a) {
  if (a >= g.order()) throw std::out_of_range("centralizer: index out of range");
  ElementSet out;
  for (Element x = 0; x < g.order(); ++x)
    if (g.mul(x, a) == g.mul(a, x)) out.push_back(x);
  return out;
}

/// Subgroup generated by `gens`, as a sorted element set.
inline ElementSet subgroup_generated(const FiniteGroup& g, std::span<const Element> gens) {
  std::vector<char> seen(g.order(), 0);
  std::vector<Element> frontier{0};
  seen[0] = 1;
  for (std::size_t i = 0; i < frontier.size(); ++i) {
    for (Element s : gens) {
      const Element y = g.mul(frontier[i], s);
      if (!seen[y]) {
        seen[y] = 1;
        frontier.push_back(y);
      }
    }
  }
  std::sort(frontier.begin(), frontier.end());
  return frontier;
}

inline bool is_subgroup(const FiniteGroup& g, const ElementSet& s) {
  if (s.empty() || s.front() != 0) return false;
  std::vector<char> in(g.order(), 0);
  for (Element x : s) in[x] = 1;
  for (Element x : s)
    for (Element y : s)
      if (!in[g.mul(x, y)]) return false;
  return true;
}

inline bool is_normal_subgroup(const FiniteGroup& g, const ElementSet& s) {
  if (!is_subgroup(g, s)) return false;
  std::vector<char> in(g.order(), 0);
  for (Element x : s) in[x] = 1;
  for (Element t = 0; t < g.order(); ++t)
    for (Element x : s)
      if (!in[g.mul(g.mul(g.inverse(t), x), t)]) return false;
  return true;
}

inline std::vector<ElementSet> conjugacy_classes(const FiniteGroup& g) {
  std::vector<char> done(g.order(), 0);
  std::vector<ElementSet> classes;
  for (Element x = 0; x < g.order(); ++x) {
    if (done[x]) continue;
    ElementSet cls;
    for (Element t = 0; t < g.order(); ++t) {
      const Element c = g.mul(g.mul(g.inverse(t), x), t);
      if (!done[c]) {
        done[c] = 1;
        cls.push_back(c);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

/// First violated group axiom, described with a witness, or nullopt.
/// Associativity is exhaustive up to order 256 and sampled (10^6 triples)
/// above that.
inline std::optional<std::string> find_integrity_violation(const FiniteGroup& g,
                                                           std::uint64_t seed = 0x5eed) {
  const std::size_t n = g.order();
  std::ostringstream os;
  for (std::size_t i = 0; i < g.table().size(); ++i) {
    if (g.table()[i] >= n) {
      os << "table entry " << i / n << "*" << i % n << " out of range";
      return os.str();
    }
  }
  for (Element x = 0; x < n; ++x) {
    if (g.mul(0, x) != x || g.mul(x, 0) != x) {
      os << "identity law fails at element " << x;
      return os.str();
    }
  }
  for (Element x = 0; x < n; ++x) {
    if (g.inverse(x) == kNoElement || g.mul(g.inverse(x), x) != 0) {
      os << "element " << x << " has no two-sided inverse";
      return os.str();
    }
  }
  auto assoc_fails = [&](Element x, Element y, Element z) {
    return g.mul(g.mul(x, y), z) != g.mul(x, g.mul(y, z));
  };
  if (n <= 256) {
    for (Element x = 0; x < n; ++x)
      for (Element y = 0; y < n; ++y)
        for (Element z = 0; z < n; ++z)
          if (assoc_fails(x, y, z)) {
            os << "associativity fails at (" << x << "," << y << "," << z << ")";
            return os.str();
          }
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Element> pick(0, static_cast<Element>(n - 1));
    for (int i = 0; i < 1'000'000; ++i) {
      const Element x = pick(rng), y = pick(rng), z = pick(rng);
      if (assoc_fails(x, y, z)) {
        os << "associativity fails at (" << x << "," << y << "," << z << ")";
        return os.str();
      }
    }
  }
  for (Element s : g.generators()) {
    if (s >= n) return std::string("generator index out of range");
  }
  if (subgroup_generated(g, g.generators()).size() != n) {
    return std::string("generators do not generate the whole group");
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Structural predicates

struct StructuralInfo {
  bool is_abelian = false;
  bool is_perfect = false;
  ElementSet center;
  ElementSet derived_subgroup;
  /// Unset when the order exceeds the normal-subgroup cap.
  std::optional<bool> is_simple;
  std::optional<std::vector<ElementSet>> normal_subgroups;
};

inline ElementSet center(const FiniteGroup& g) {
  ElementSet z;
  for (Element x = 0; x < g.order(); ++x) {
    bool central = true;
    for (Element y = 0; y < g.order() && central; ++y) central = g.mul(x, y) == g.mul(y, x);
    if (central) z.push_back(x);
  }
  return z;
}

inline ElementSet derived_subgroup(const FiniteGroup& g) {
  std::vector<char> seen(g.order(), 0);
  std::vector<Element> commutators;
  for (Element x = 0; x < g.order(); ++x)
    for (Element y = 0; y < g.order(); ++y) {
      const Element c = g.mul(g.mul(g.inverse(x), g.inverse(y)), g.mul(x, y));
      if (!seen[c]) {
        seen[c] = 1;
        commutators.push_back(c);
      }
    }
  return subgroup_generated(g, commutators);
}

/// Normal subgroups as joins of conjugacy classes, sorted by size then
/// lexicographically.
inline std::vector<ElementSet> normal_subgroups(const FiniteGroup& g,
                                                std::size_t max_order = kDefaultMaxNormalSubgroupOrder) {
  if (g.order() > max_order) {
    throw SizeError("normal_subgroups: order " + std::to_string(g.order()) +
                    " exceeds cap " + std::to_string(max_order));
  }
  const auto classes = conjugacy_classes(g);
  struct Node {
    ElementSet elements;
    std::vector<Element> gens;
  };
  std::set<ElementSet> found;
  std::vector<Node> queue{{ElementSet{0}, {}}};
  found.insert(queue.front().elements);
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (const auto& cls : classes) {
      if (std::binary_search(queue[i].elements.begin(), queue[i].elements.end(), cls.front())) continue;
      std::vector<Element> gens = queue[i].gens;
      gens.insert(gens.end(), cls.begin(), cls.end());
      ElementSet joined = subgroup_generated(g, gens);
      if (found.insert(joined).second) {
        // Keep a short generating list: the class representatives used so far.
        std::vector<Element> short_gens = queue[i].gens;
        short_gens.insert(short_gens.end(), cls.begin(), cls.end());
        queue.push_back({std::move(joined), std::move(short_gens)});
      }
    }
  }
  std::vector<ElementSet> out(found.begin(), found.end());
  std::stable_sort(out.begin(), out.end(),
                   [](const ElementSet& a, const ElementSet& b) {
                     if (a.size() != b.size()) return a.size() < b.size();
                     return a < b;
                   });
  return out;
}

inline StructuralInfo structural_predicates(const FiniteGroup& g,
                                            std::size_t max_order = kDefaultMaxNormalSubgroupOrder) {
  StructuralInfo info;
  info.is_abelian = g.is_abelian();
  info.center = center(g);
  info.derived_subgroup = derived_subgroup(g);
  info.is_perfect = info.derived_subgroup.size() == g.order();
  if (g.order() <= max_order) {
    info.normal_subgroups = normal_subgroups(g, max_order);
    info.is_simple = info.normal_subgroups->size() == 2;
  }
  return info;
}

// ---------------------------------------------------------------------------
// Generating sets

namespace detail {

/// Primary components of an abelian basis: one element of prime-power order
/// per (basis element, prime) pair.
inline std::vector<std::pair<Element, std::uint32_t>> primary_basis(const FiniteGroup& g,
                                                                    const AbelianBasis& basis) {
  std::vector<std::pair<Element, std::uint32_t>> out;
  for (std::size_t j = 0; j < basis.elements.size(); ++j) {
    const std::uint32_t m = basis.orders[j];
    if (m == 1) continue;
    for (const auto& pp : numtheory::factorize(m)) {
      const auto q = static_cast<std::uint32_t>(pp.value());
      out.emplace_back(g.power(basis.elements[j], m / q), q);
    }
  }
  return out;
}

/// Invariant-factor generators built from an abelian basis; their count is
/// the rank of the group, which is the minimum possible.
inline std::vector<Element> invariant_factor_generators(const FiniteGroup& g,
                                                        const AbelianBasis& basis) {
  std::map<std::uint64_t, std::vector<std::pair<std::uint32_t, Element>>> by_prime;
  for (auto [e, q] : primary_basis(g, basis)) {
    by_prime[numtheory::factorize(q).front().prime].emplace_back(q, e);
  }
  std::size_t rank = 0;
  for (auto& [p, list] : by_prime) {
    std::sort(list.begin(), list.end(), std::greater<>());
    rank = std::max(rank, list.size());
  }
  std::vector<Element> gens(rank, 0);
  for (const auto& [p, list] : by_prime)
    for (std::size_t i = 0; i < list.size(); ++i) gens[i] = g.mul(gens[i], list[i].second);
  if (gens.empty()) gens.push_back(0);
  return gens;
}

}  // namespace detail

/// Greedy minimal generating set: one generator if the group is cyclic,
/// otherwise a bounded search over pairs and then triples.  Falls back to the
/// current generators when the search budget runs out.
inline std::vector<Element> greedy_minimal_generators(const FiniteGroup& g,
                                                      std::size_t attempt_budget = 20'000) {
  const std::size_t n = g.order();
  if (n == 1) return {0};
  for (Element x = 0; x < n; ++x)
    if (g.order_of(x) == n) return {x};
  if (g.abelian_basis()) return detail::invariant_factor_generators(g, *g.abelian_basis());

  std::vector<Element> by_order(n - 1);
  std::iota(by_order.begin(), by_order.end(), Element{1});
  std::stable_sort(by_order.begin(), by_order.end(),
                   [&](Element a, Element b) { return g.order_of(a) > g.order_of(b); });

  std::size_t attempts = 0;
  for (Element x : by_order) {
    const ElementSet hx = subgroup_generated(g, std::vector<Element>{x});
    for (Element y : by_order) {
      if (std::binary_search(hx.begin(), hx.end(), y)) continue;
      if (++attempts > attempt_budget) goto triples;
      const std::vector<Element> pair{x, y};
      if (subgroup_generated(g, pair).size() == n) return pair;
    }
  }
triples:
  attempts = 0;
  for (Element x : by_order) {
    for (Element y : by_order) {
      if (y <= x) continue;
      const ElementSet hxy = subgroup_generated(g, std::vector<Element>{x, y});
      if (hxy.size() == n) return {x, y};
      for (Element z : by_order) {
        if (std::binary_search(hxy.begin(), hxy.end(), z)) continue;
        if (++attempts > attempt_budget) {
          std::vector<Element> current(g.generators().begin(), g.generators().end());
          return current;
        }
        const std::vector<Element> triple{x, y, z};
        if (subgroup_generated(g, triple).size() == n) return triple;
      }
    }
  }
  return {g.generators().begin(), g.generators().end()};
}

// ---------------------------------------------------------------------------
// Group specifications

enum class Family {
  kCyclic,
  kAbelian,
  kDihedral,
  kDicyclic,
  kSymmetric,
  kAlternating,
  kQuaternion,
  kMetacyclic,
  kHeisenberg,
  kModularP3,
  kSL25,
  kAGL32,
  kProduct,
};

struct GroupSpec {
  Family family = Family::kCyclic;
  std::vector<std::uint64_t> params;
  std::vector<GroupSpec> factors;  // exactly two for kProduct

  static GroupSpec cyclic(std::uint64_t n) { return {Family::kCyclic, {n}, {}}; }
  static GroupSpec abelian(std::vector<std::uint64_t> moduli) {
    return {Family::kAbelian, std::move(moduli), {}};
  }
  static GroupSpec dihedral(std::uint64_t n) { return {Family::kDihedral, {n}, {}}; }
  static GroupSpec dicyclic(std::uint64_t n) { return {Family::kDicyclic, {n}, {}}; }
  static GroupSpec symmetric(std::uint64_t n) { return {Family::kSymmetric, {n}, {}}; }
  static GroupSpec alternating(std::uint64_t n) { return {Family::kAlternating, {n}, {}}; }
  static GroupSpec quaternion() { return {Family::kQuaternion, {}, {}}; }
  static GroupSpec metacyclic(std::uint64_t q, std::uint64_t m) {
    return {Family::kMetacyclic, {q, m}, {}};
  }
  static GroupSpec heisenberg(std::uint64_t p) { return {Family::kHeisenberg, {p}, {}}; }
  static GroupSpec modular_p3(std::uint64_t p) { return {Family::kModularP3, {p}, {}}; }
  static GroupSpec sl25() { return {Family::kSL25, {}, {}}; }
  static GroupSpec agl32() { return {Family::kAGL32, {}, {}}; }
  static GroupSpec product(GroupSpec a, GroupSpec b) {
    return {Family::kProduct, {}, {std::move(a), std::move(b)}};
  }

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

namespace detail {

inline std::string join_params(const std::vector<std::uint64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

}  // namespace detail

inline std::string to_string(const GroupSpec& spec) {
  using detail::join_params;
  switch (spec.family) {
    case Family::kCyclic: return "cyclic:" + join_params(spec.params);
    case Family::kAbelian: return "abelian:" + join_params(spec.params);
    case Family::kDihedral: return "dihedral:" + join_params(spec.params);
    case Family::kDicyclic: return "dicyclic:" + join_params(spec.params);
    case Family::kSymmetric: return "symmetric:" + join_params(spec.params);
    case Family::kAlternating: return "alternating:" + join_params(spec.params);
    case Family::kQuaternion: return "quaternion";
    case Family::kMetacyclic: return "metacyclic:" + join_params(spec.params);
    case Family::kHeisenberg: return "heisenberg:" + join_params(spec.params);
    case Family::kModularP3: return "modular_p3:" + join_params(spec.params);
    case Family::kSL25: return "sl25";
    case Family::kAGL32: return "agl32";
    case Family::kProduct:
      return "product:(" + to_string(spec.factors.at(0)) + ")x(" + to_string(spec.factors.at(1)) + ")";
  }
  return "?";
}

namespace detail {

inline std::vector<std::uint64_t> parse_uint_list(const std::string& text, const std::string& spec) {
  std::vector<std::uint64_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos || item.size() > 9) {
      throw ParameterError("malformed integer list in group spec '" + spec + "'");
    }
    out.push_back(std::stoull(item));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

/// Index of the ')' matching the '(' at `open`.
inline std::size_t matching_paren(const std::string& s, std::size_t open) {
  int depth = 0;
  for (std::size_t i = open; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')' && --depth == 0) return i;
  }
  return std::string::npos;
}

}  // namespace detail

/// Parses the CLI grammar: `cyclic:12`, `abelian:2,4,8`, `quaternion`,
/// `metacyclic:7,3`, `product:(A)x(B)`, ...
inline GroupSpec parse_group_spec(const std::string& text) {
  const std::size_t colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? std::string() : text.substr(colon + 1);
  auto need_args = [&](std::size_t count) {
    auto v = detail::parse_uint_list(rest, text);
    if (count != 0 && v.size() != count) {
      throw ParameterError("group spec '" + text + "' expects " + std::to_string(count) + " parameter(s)");
    }
    return v;
  };
  auto no_args = [&] {
    if (colon != std::string::npos) throw ParameterError("group spec '" + text + "' takes no parameters");
  };
  if (head == "cyclic") return GroupSpec::cyclic(need_args(1)[0]);
  if (head == "abelian") return GroupSpec::abelian(need_args(0));
  if (head == "dihedral") return GroupSpec::dihedral(need_args(1)[0]);
  if (head == "dicyclic") return GroupSpec::dicyclic(need_args(1)[0]);
  if (head == "symmetric") return GroupSpec::symmetric(need_args(1)[0]);
  if (head == "alternating") return GroupSpec::alternating(need_args(1)[0]);
  if (head == "metacyclic") {
    auto v = need_args(2);
    return GroupSpec::metacyclic(v[0], v[1]);
  }
  if (head == "heisenberg") return GroupSpec::heisenberg(need_args(1)[0]);
  if (head == "modular_p3") return GroupSpec::modular_p3(need_args(1)[0]);
  if (head == "quaternion") {
    no_args();
    return GroupSpec::quaternion();
  }
  if (head == "sl25") {
    no_args();
    return GroupSpec::sl25();
  }
  if (head == "agl32") {
    no_args();
    return GroupSpec::agl32();
  }
  if (head == "product") {
    if (rest.empty() || rest.front() != '(') throw ParameterError("product spec must look like product:(A)x(B)");
    const std::size_t close_a = detail::matching_paren(rest, 0);
    if (close_a == std::string::npos || close_a + 2 >= rest.size() || rest[close_a + 1] != 'x' ||
        rest[close_a + 2] != '(') {
      throw ParameterError("product spec must look like product:(A)x(B)");
    }
    const std::size_t close_b = detail::matching_paren(rest, close_a + 2);
    if (close_b != rest.size() - 1) throw ParameterError("product spec must look like product:(A)x(B)");
    return GroupSpec::product(parse_group_spec(rest.substr(1, close_a - 1)),
                              parse_group_spec(rest.substr(close_a + 3, close_b - close_a - 3)));
  }
  throw ParameterError("unknown group family '" + head + "'");
}

/// Order implied by a spec, validating parameters along the way.
inline std::uint64_t spec_order(const GroupSpec& spec);

inline void validate_spec(const GroupSpec& spec) {
  auto positive = [&](std::uint64_t v, const char* what) {
    if (v < 1) throw ParameterError(std::string(what) + " must be >= 1");
  };
  auto odd_prime = [&](std::uint64_t p, const char* family) {
    if (p % 2 == 0 || !numtheory::is_prime(p)) {
      throw ParameterError(std::string(family) + " requires p to be an odd prime, got " + std::to_string(p));
    }
    if (p > 21) throw SizeError(std::string(family) + ": p^3 exceeds the supported order");
  };
  switch (spec.family) {
    case Family::kCyclic:
    case Family::kDihedral:
    case Family::kDicyclic:
      positive(spec.params.at(0), "n");
      if (spec.params[0] > kDefaultMaxProductOrder) throw SizeError("group order too large");
      break;
    case Family::kAbelian:
      if (spec.params.empty()) throw ParameterError("abelian spec needs at least one modulus");
      for (auto m : spec.params) positive(m, "abelian modulus");
      break;
    case Family::kSymmetric:
    case Family::kAlternating:
      positive(spec.params.at(0), "n");
      if (spec.params[0] > 7) throw SizeError("permutation groups are limited to degree 7");
      break;
    case Family::kMetacyclic: {
      const auto q = spec.params.at(0), m = spec.params.at(1);
      if (!numtheory::is_prime(q)) throw ParameterError("metacyclic requires q prime, got " + std::to_string(q));
      if (m <= 1) throw ParameterError("metacyclic requires m > 1");
      if ((q - 1) % m != 0) throw ParameterError("metacyclic requires m | q-1");
      break;
    }
    case Family::kHeisenberg: odd_prime(spec.params.at(0), "heisenberg"); break;
    case Family::kModularP3: odd_prime(spec.params.at(0), "modular_p3"); break;
    case Family::kQuaternion:
    case Family::kSL25:
    case Family::kAGL32: break;
    case Family::kProduct:
      if (spec.factors.size() != 2) throw ParameterError("product needs exactly two factors");
      validate_spec(spec.factors[0]);
      validate_spec(spec.factors[1]);
      break;
  }
  if (spec_order(spec) > kDefaultMaxProductOrder) throw SizeError("group order exceeds 10000");
}

inline std::uint64_t spec_order(const GroupSpec& spec) {
  switch (spec.family) {
    case Family::kCyclic: return spec.params.at(0);
    case Family::kAbelian: {
      std::uint64_t n = 1;
      for (auto m : spec.params) {
        n *= m;
        if (n > 100'000'000) return n;
      }
      return n;
    }
    case Family::kDihedral: return 2 * spec.params.at(0);
    case Family::kDicyclic: return 4 * spec.params.at(0);
    case Family::kSymmetric:
    case Family::kAlternating: {
      std::uint64_t f = 1;
      for (std::uint64_t i = 2; i <= spec.params.at(0); ++i) f *= i;
      if (spec.family == Family::kAlternating && spec.params[0] >= 2) f /= 2;
      return f;
    }
    case Family::kQuaternion: return 8;
    case Family::kMetacyclic: return spec.params.at(0) * spec.params.at(1);
    case Family::kHeisenberg:
    case Family::kModularP3: return spec.params.at(0) * spec.params.at(0) * spec.params.at(0);
    case Family::kSL25: return 120;
    case Family::kAGL32: return 1344;
    case Family::kProduct: return spec_order(spec.factors.at(0)) * spec_order(spec.factors.at(1));
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Constructors

namespace detail {

inline std::string power_word(const std::string& sym, std::uint64_t k) {
  if (k == 0) return "";
  if (k == 1) return sym;
  return sym + "^" + std::to_string(k);
}

inline std::string two_letter_name(const std::string& a, std::uint64_t i, const std::string& b,
                                   std::uint64_t j) {
  std::string s = power_word(a, i) + power_word(b, j);
  return s.empty() ? "e" : s;
}

/// Closes a set of concretely represented generators (encoded as 64-bit
/// codes) under `mul`, in breadth-first discovery order from the identity.
template <class Mul, class Name>
FiniteGroup close_generators(std::string label, std::uint64_t identity,
                             const std::vector<std::uint64_t>& gens, Mul mul, Name name,
                             std::vector<std::uint64_t>* codes_out = nullptr) {
  std::vector<std::uint64_t> codes{identity};
  std::unordered_map<std::uint64_t, Element> index{{identity, 0}};
  for (std::size_t i = 0; i < codes.size(); ++i) {
    for (auto s : gens) {
      const std::uint64_t c = mul(codes[i], s);
      if (index.emplace(c, static_cast<Element>(codes.size())).second) codes.push_back(c);
    }
  }
  const std::size_t n = codes.size();
  std::vector<Element> table(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) table[x * n + y] = index.at(mul(codes[x], codes[y]));
  std::vector<Element> gen_idx;
  for (auto s : gens) gen_idx.push_back(index.at(s));
  std::vector<std::string> names;
  names.reserve(n);
  for (auto c : codes) names.push_back(name(c));
  if (codes_out) *codes_out = codes;
  return FiniteGroup::from_table(std::move(label), n, std::move(table), std::move(gen_idx), std::move(names));
}

/// Z_n ⋊ Z_m with y^{-1} x y = x^s; element x^i y^j has index i + n*j.
inline FiniteGroup semidirect_cyclic(std::string label, std::uint64_t n, std::uint64_t m,
                                     std::uint64_t s, const std::string& xs, const std::string& ys) {
  const std::uint64_t s_inv = numtheory::inverse_mod(s % n, n);
  std::vector<std::uint64_t> s_inv_pow(m);
  s_inv_pow[0] = 1 % n;
  for (std::uint64_t j = 1; j < m; ++j) s_inv_pow[j] = s_inv_pow[j - 1] * s_inv % n;
  const std::size_t order = n * m;
  std::vector<Element> table(order * order);
  for (std::uint64_t a = 0; a < order; ++a) {
    const std::uint64_t i = a % n, j = a / n;
    for (std::uint64_t b = 0; b < order; ++b) {
      const std::uint64_t k = b % n, l = b / n;
      const std::uint64_t ni = (i + k * s_inv_pow[j]) % n;
      const std::uint64_t nj = (j + l) % m;
      table[a * order + b] = static_cast<Element>(ni + n * nj);
    }
  }
  std::vector<std::string> names;
  for (std::uint64_t a = 0; a < order; ++a) names.push_back(two_letter_name(xs, a % n, ys, a / n));
  std::vector<Element> gens{static_cast<Element>(1 % order), static_cast<Element>(n % order)};
  return FiniteGroup::from_table(std::move(label), order, std::move(table), std::move(gens), std::move(names));
}

// Permutations on at most 16 points, packed 4 bits per image.
inline std::uint64_t perm_encode(const std::vector<unsigned>& img) {
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < img.size(); ++i) c |= static_cast<std::uint64_t>(img[i]) << (4 * i);
  return c;
}
inline unsigned perm_at(std::uint64_t code, unsigned i) { return (code >> (4 * i)) & 0xFU; }

/// x*y applies x first, then y.
inline std::uint64_t perm_mul(std::uint64_t x, std::uint64_t y, unsigned degree) {
  std::uint64_t c = 0;
  for (unsigned i = 0; i < degree; ++i) c |= static_cast<std::uint64_t>(perm_at(y, perm_at(x, i))) << (4 * i);
  return c;
}

inline std::uint64_t perm_identity(unsigned degree) {
  std::vector<unsigned> img(degree);
  std::iota(img.begin(), img.end(), 0U);
  return perm_encode(img);
}

inline std::string perm_name(std::uint64_t code, unsigned degree) {
  std::vector<char> seen(degree, 0);
  std::string out;
  for (unsigned i = 0; i < degree; ++i) {
    if (seen[i] || perm_at(code, i) == i) continue;
    out += '(';
    unsigned j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = 1;
      if (!first) out += ' ';
      out += std::to_string(j + 1);
      first = false;
      j = perm_at(code, j);
    }
    out += ')';
  }
  return out.empty() ? "e" : out;
}

/// Cycle lengths (>= 2) of a packed permutation, sorted descending.
inline std::vector<unsigned> perm_cycle_type(std::uint64_t code, unsigned degree) {
  std::vector<char> seen(degree, 0);
  std::vector<unsigned> lengths;
  for (unsigned i = 0; i < degree; ++i) {
    if (seen[i]) continue;
    unsigned len = 0;
    for (unsigned j = i; !seen[j]; j = perm_at(code, j)) {
      seen[j] = 1;
      ++len;
    }
    if (len >= 2) lengths.push_back(len);
  }
  std::sort(lengths.begin(), lengths.end(), std::greater<>());
  return lengths;
}

}  // namespace detail

/// A permutation group together with the permutation behind each element.
struct PermutationGroup {
  FiniteGroup group;
  unsigned degree;
  std::vector<std::uint64_t> codes;

  std::vector<unsigned> cycle_type(Element x) const { return detail::perm_cycle_type(codes.at(x), degree); }
  unsigned image(Element x, unsigned point) const { return detail::perm_at(codes.at(x), point); }
};

inline PermutationGroup build_permutation_group(unsigned degree, bool even_only) {
  std::vector<std::uint64_t> gens;
  auto cycle = [&](std::vector<unsigned> pts) {
    std::vector<unsigned> img(degree);
    std::iota(img.begin(), img.end(), 0U);
    for (std::size_t i = 0; i < pts.size(); ++i) img[pts[i]] = pts[(i + 1) % pts.size()];
    return detail::perm_encode(img);
  };
  if (!even_only && degree >= 2) {
    gens.push_back(cycle({0, 1}));
    std::vector<unsigned> all(degree);
    std::iota(all.begin(), all.end(), 0U);
    if (degree > 2) gens.push_back(cycle(all));
  }
  if (even_only) {
    for (unsigned k = 2; k < degree; ++k) gens.push_back(cycle({0, 1, k}));
  }
  const std::string label = (even_only ? "A" : "S") + std::to_string(degree);
  std::vector<std::uint64_t> codes;
  FiniteGroup g = detail::close_generators(
      label, detail::perm_identity(degree), gens,
      [degree](std::uint64_t x, std::uint64_t y) { return detail::perm_mul(x, y, degree); },
      [degree](std::uint64_t c) { return detail::perm_name(c, degree); }, &codes);
  return PermutationGroup{std::move(g), degree, std::move(codes)};
}

/// AGL(3,2) with, for each element v -> Av + b, the index of its linear part
/// (A, 0), and the translation subgroup.
struct AffineGroup {
  FiniteGroup group;
  std::vector<Element> linear_part;
  ElementSet translations;
};

namespace detail {

// Affine map v -> Av + b over F_2^3: bits 0..8 hold A row-major, bits 9..11 hold b.
inline unsigned agl_apply_matrix(std::uint64_t code, unsigned v) {
  unsigned out = 0;
  for (unsigned r = 0; r < 3; ++r) {
    unsigned bit = 0;
    for (unsigned c = 0; c < 3; ++c) bit ^= ((code >> (3 * r + c)) & 1U) & ((v >> c) & 1U);
    out |= bit << r;
  }
  return out;
}

inline std::uint64_t agl_make(const unsigned (&a)[3][3], unsigned b) {
  std::uint64_t code = 0;
  for (unsigned r = 0; r < 3; ++r)
    for (unsigned c = 0; c < 3; ++c) code |= static_cast<std::uint64_t>(a[r][c] & 1U) << (3 * r + c);
  return code | (static_cast<std::uint64_t>(b & 7U) << 9);
}

/// x*y applies x first, then y: v -> A_y(A_x v + b_x) + b_y.
inline std::uint64_t agl_mul(std::uint64_t x, std::uint64_t y) {
  unsigned prod[3][3];
  for (unsigned c = 0; c < 3; ++c) {
    const unsigned col = agl_apply_matrix(y, agl_apply_matrix(x, 1U << c));
    for (unsigned r = 0; r < 3; ++r) prod[r][c] = (col >> r) & 1U;
  }
  const unsigned b = agl_apply_matrix(y, static_cast<unsigned>(x >> 9) & 7U) ^ (static_cast<unsigned>(y >> 9) & 7U);
  return agl_make(prod, b);
}

inline std::string agl_name(std::uint64_t code) {
  std::string s = "[";
  for (unsigned r = 0; r < 3; ++r) {
    if (r) s += '/';
    for (unsigned c = 0; c < 3; ++c) s += ((code >> (3 * r + c)) & 1U) ? '1' : '0';
  }
  s += "|";
  for (unsigned i = 0; i < 3; ++i) s += ((code >> (9 + i)) & 1U) ? '1' : '0';
  return s + "]";
}

}  // namespace detail

inline AffineGroup build_agl32_detailed() {
  const unsigned id[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  std::vector<std::uint64_t> gens;
  for (unsigned i = 0; i < 3; ++i)
    for (unsigned j = 0; j < 3; ++j) {
      if (i == j) continue;
      unsigned t[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
      t[i][j] = 1;
      gens.push_back(detail::agl_make(t, 0));
    }
  gens.push_back(detail::agl_make(id, 1));
  std::vector<std::uint64_t> codes;
  AffineGroup out{detail::close_generators("AGL(3,2)", detail::agl_make(id, 0), gens, detail::agl_mul,
                                           detail::agl_name, &codes),
                  {},
                  {}};
  std::unordered_map<std::uint64_t, Element> index;
  for (std::size_t i = 0; i < codes.size(); ++i) index.emplace(codes[i], static_cast<Element>(i));
  for (auto c : codes) {
    out.linear_part.push_back(index.at(c & 0x1FFU));
    if ((c & 0x1FFU) == detail::agl_make(id, 0)) out.translations.push_back(index.at(c));
  }
  std::sort(out.translations.begin(), out.translations.end());
  out.group = out.group.with_generators(greedy_minimal_generators(out.group));
  return out;
}

inline FiniteGroup build_cyclic(std::uint64_t n) {
  std::vector<Element> table(n * n);
  for (std::uint64_t x = 0; x < n; ++x)
    for (std::uint64_t y = 0; y < n; ++y) table[x * n + y] = static_cast<Element>((x + y) % n);
  std::vector<std::string> names;
  for (std::uint64_t x = 0; x < n; ++x) names.push_back(std::to_string(x));
  std::optional<AbelianBasis> basis;
  if (n > 1) basis = AbelianBasis{{1}, {static_cast<std::uint32_t>(n)}};
  else basis = AbelianBasis{};
  return FiniteGroup::from_table("Z" + std::to_string(n), n, std::move(table),
                                 {static_cast<Element>(1 % n)}, std::move(names), std::move(basis));
}

inline FiniteGroup build_abelian(const std::vector<std::uint64_t>& moduli) {
  std::uint64_t n = 1;
  for (auto m : moduli) n *= m;
  // Mixed radix: coordinate j has stride prod(moduli[0..j)).
  std::vector<std::uint64_t> stride(moduli.size(), 1);
  for (std::size_t j = 1; j < moduli.size(); ++j) stride[j] = stride[j - 1] * moduli[j - 1];
  auto coord = [&](std::uint64_t x, std::size_t j) { return x / stride[j] % moduli[j]; };
  std::vector<Element> table(n * n);
  for (std::uint64_t x = 0; x < n; ++x)
    for (std::uint64_t y = 0; y < n; ++y) {
      std::uint64_t z = 0;
      for (std::size_t j = 0; j < moduli.size(); ++j) z += (coord(x, j) + coord(y, j)) % moduli[j] * stride[j];
      table[x * n + y] = static_cast<Element>(z);
    }
  std::vector<std::string> names;
  for (std::uint64_t x = 0; x < n; ++x) {
    std::string s = "(";
    for (std::size_t j = 0; j < moduli.size(); ++j) {
      if (j) s += ',';
      s += std::to_string(coord(x, j));
    }
    names.push_back(s + ")");
  }
  AbelianBasis basis;
  std::vector<Element> gens;
  for (std::size_t j = 0; j < moduli.size(); ++j) {
    if (moduli[j] == 1) continue;
    basis.elements.push_back(static_cast<Element>(stride[j]));
    basis.orders.push_back(static_cast<std::uint32_t>(moduli[j]));
    gens.push_back(static_cast<Element>(stride[j]));
  }
  std::string label = "Z";
  for (std::size_t j = 0; j < moduli.size(); ++j) label += (j ? "xZ" : "") + std::to_string(moduli[j]);
  return FiniteGroup::from_table(label, n, std::move(table), std::move(gens), std::move(names), std::move(basis));
}

inline FiniteGroup build_dihedral(std::uint64_t n) {
  // r^i s^j -> i + n*j; (r^a s^b)(r^c s^d) = r^{a + (-1)^b c} s^{b+d}.
  const std::uint64_t order = 2 * n;
  std::vector<Element> table(order * order);
  for (std::uint64_t x = 0; x < order; ++x)
    for (std::uint64_t y = 0; y < order; ++y) {
      const std::uint64_t a = x % n, b = x / n, c = y % n, d = y / n;
      const std::uint64_t rot = b == 0 ? (a + c) % n : (a + n - c) % n;
      table[x * order + y] = static_cast<Element>(rot + n * ((b + d) % 2));
    }
  std::vector<std::string> names;
  for (std::uint64_t x = 0; x < order; ++x) names.push_back(detail::two_letter_name("r", x % n, "s", x / n));
  return FiniteGroup::from_table("D" + std::to_string(order), order, std::move(table),
                                 {static_cast<Element>(1 % n), static_cast<Element>(n)}, std::move(names));
}

inline FiniteGroup build_dicyclic(std::uint64_t n, std::string label = {}) {
  // a^i x^j -> i + 2n*j; x a = a^{-1} x, x^2 = a^n.
  const std::uint64_t m = 2 * n, order = 4 * n;
  std::vector<Element> table(order * order);
  for (std::uint64_t u = 0; u < order; ++u)
    for (std::uint64_t v = 0; v < order; ++v) {
      const std::uint64_t i = u % m, j = u / m, k = v % m, l = v / m;
      std::uint64_t rot, xs;
      if (j == 0) {
        rot = (i + k) % m;
        xs = l;
      } else if (l == 0) {
        rot = (i + m - k) % m;
        xs = 1;
      } else {
        rot = (i + m - k + n) % m;
        xs = 0;
      }
      table[u * order + v] = static_cast<Element>(rot + m * xs);
    }
  std::vector<std::string> names;
  for (std::uint64_t u = 0; u < order; ++u) names.push_back(detail::two_letter_name("a", u % m, "x", u / m));
  if (label.empty()) label = "Dic" + std::to_string(n);
  return FiniteGroup::from_table(std::move(label), order, std::move(table),
                                 {static_cast<Element>(1 % m), static_cast<Element>(m)}, std::move(names));
}

/// Smallest s in [2, q) whose multiplicative order mod q is exactly m.
inline std::uint64_t primitive_root_of_order(std::uint64_t q, std::uint64_t m) {
  for (std::uint64_t s = 2; s < q; ++s)
    if (numtheory::multiplicative_order(s, q) == m) return s;
  throw ParameterError("no element of multiplicative order " + std::to_string(m) + " mod " + std::to_string(q));
}

inline FiniteGroup build_metacyclic(std::uint64_t q, std::uint64_t m) {
  const std::uint64_t s = primitive_root_of_order(q, m);
  return detail::semidirect_cyclic("G(" + std::to_string(q) + "," + std::to_string(m) + ")", q, m, s, "x", "y");
}

inline FiniteGroup build_modular_p3(std::uint64_t p) {
  return detail::semidirect_cyclic("M" + std::to_string(p * p * p), p * p, p, 1 + p, "a", "b");
}

inline FiniteGroup build_heisenberg(std::uint64_t p) {
  // Unitriangular [[1,a,c],[0,1,b],[0,0,1]] -> a + p b + p^2 c.
  const std::uint64_t order = p * p * p;
  std::vector<Element> table(order * order);
  for (std::uint64_t x = 0; x < order; ++x)
    for (std::uint64_t y = 0; y < order; ++y) {
      const std::uint64_t a = x % p, b = x / p % p, c = x / (p * p);
      const std::uint64_t a2 = y % p, b2 = y / p % p, c2 = y / (p * p);
      table[x * order + y] =
          static_cast<Element>((a + a2) % p + p * ((b + b2) % p) + p * p * ((c + c2 + a * b2) % p));
    }
  std::vector<std::string> names;
  for (std::uint64_t x = 0; x < order; ++x)
    names.push_back("[" + std::to_string(x % p) + "," + std::to_string(x / p % p) + "," +
                    std::to_string(x / (p * p)) + "]");
  return FiniteGroup::from_table("H" + std::to_string(order), order, std::move(table),
                                 {1, static_cast<Element>(p)}, std::move(names));
}

inline FiniteGroup build_sl25() {
  // [[a,b],[c,d]] -> a + 5b + 25c + 125d.
  auto enc = [](std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
    return a + 5 * b + 25 * c + 125 * d;
  };
  auto mul = [&](std::uint64_t x, std::uint64_t y) {
    const std::uint64_t a = x % 5, b = x / 5 % 5, c = x / 25 % 5, d = x / 125;
    const std::uint64_t e = y % 5, f = y / 5 % 5, g = y / 25 % 5, h = y / 125;
    return enc((a * e + b * g) % 5, (a * f + b * h) % 5, (c * e + d * g) % 5, (c * f + d * h) % 5);
  };
  auto name = [](std::uint64_t x) {
    return "[[" + std::to_string(x % 5) + "," + std::to_string(x / 5 % 5) + "],[" + std::to_string(x / 25 % 5) +
           "," + std::to_string(x / 125) + "]]";
  };
  return detail::close_generators("SL(2,5)", enc(1, 0, 0, 1), {enc(1, 1, 0, 1), enc(1, 0, 1, 1)}, mul, name);
}

inline FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h,
                                  std::size_t max_order = kDefaultMaxProductOrder) {
  const std::size_t ng = g.order(), nh = h.order(), n = ng * nh;
  if (n > max_order) {
    throw SizeError("direct_product: order " + std::to_string(n) + " exceeds cap " + std::to_string(max_order));
  }
  std::vector<Element> table(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      table[x * n + y] = static_cast<Element>(g.mul(static_cast<Element>(x / nh), static_cast<Element>(y / nh)) * nh +
                                              h.mul(static_cast<Element>(x % nh), static_cast<Element>(y % nh)));
  auto pair = [nh](Element a, Element b) { return static_cast<Element>(a * nh + b); };
  std::vector<Element> gens;
  for (Element s : g.generators()) gens.push_back(pair(s, 0));
  for (Element s : h.generators()) gens.push_back(pair(0, s));
  std::vector<std::string> names;
  for (std::size_t x = 0; x < n; ++x)
    names.push_back("(" + g.element_name(static_cast<Element>(x / nh)) + "," +
                    h.element_name(static_cast<Element>(x % nh)) + ")");
  std::optional<AbelianBasis> basis;
  if (g.abelian_basis() && h.abelian_basis()) {
    basis = AbelianBasis{};
    for (std::size_t j = 0; j < g.abelian_basis()->elements.size(); ++j) {
      basis->elements.push_back(pair(g.abelian_basis()->elements[j], 0));
      basis->orders.push_back(g.abelian_basis()->orders[j]);
    }
    for (std::size_t j = 0; j < h.abelian_basis()->elements.size(); ++j) {
      basis->elements.push_back(pair(0, h.abelian_basis()->elements[j]));
      basis->orders.push_back(h.abelian_basis()->orders[j]);
    }
  }
  return FiniteGroup::from_table(g.label() + "x" + h.label(), n, std::move(table), std::move(gens),
                                 std::move(names), std::move(basis));
}

/// Builds the group described by `spec`.  Every family except products gets
/// a greedily minimized generating set; products keep the componentwise one.
inline FiniteGroup build_group(const GroupSpec& spec) {
  validate_spec(spec);
  FiniteGroup g = [&]() -> FiniteGroup {
    switch (spec.family) {
      case Family::kCyclic: return build_cyclic(spec.params[0]);
      case Family::kAbelian: return build_abelian(spec.params);
      case Family::kDihedral: return build_dihedral(spec.params[0]);
      case Family::kDicyclic: return build_dicyclic(spec.params[0]);
      case Family::kQuaternion: return build_dicyclic(2, "Q8");
      case Family::kSymmetric: return build_permutation_group(static_cast<unsigned>(spec.params[0]), false).group;
      case Family::kAlternating: return build_permutation_group(static_cast<unsigned>(spec.params[0]), true).group;
      case Family::kMetacyclic: return build_metacyclic(spec.params[0], spec.params[1]);
      case Family::kHeisenberg: return build_heisenberg(spec.params[0]);
      case Family::kModularP3: return build_modular_p3(spec.params[0]);
      case Family::kSL25: return build_sl25();
      case Family::kAGL32: return build_agl32_detailed().group;
      case Family::kProduct:
        return direct_product(build_group(spec.factors[0]), build_group(spec.factors[1]));
    }
    throw ParameterError("unhandled family");
  }();
  if (spec.family == Family::kProduct || spec.family == Family::kAGL32) return g;
  return g.with_generators(greedy_minimal_generators(g));
}

inline FiniteGroup build_group(const std::string& spec) { return build_group(parse_group_spec(spec)); }

}  // namespace endograph
