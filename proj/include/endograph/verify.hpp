#pragma once

// Group catalog and the T1..T18 verification checks.

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "endograph/analytics.hpp"
#include "endograph/digraph.hpp"
#include "endograph/errors.hpp"
#include "endograph/group.hpp"
#include "endograph/hom.hpp"
#include "endograph/numtheory.hpp"
#include "endograph/powergraph.hpp"

namespace endograph::verify {

// ---------------------------------------------------------------------------
// Catalog

struct CatalogEntry {
  GroupSpec spec;
  std::string name;
  std::uint64_t order = 1;
  bool abelian = false;
  bool p_group = false;
};

namespace detail {

inline void partitions(unsigned n, unsigned max_part, std::vector<unsigned>& current,
                       std::vector<std::vector<unsigned>>& out) {
  if (n == 0) {
    out.push_back(current);
    return;
  }
  for (unsigned part = std::min(n, max_part); part >= 1; --part) {
    current.push_back(part);
    partitions(n - part, part, current, out);
    current.pop_back();
  }
}

inline bool is_prime_power(std::uint64_t n) { return n > 1 && numtheory::factorize(n).size() == 1; }

inline CatalogEntry make_entry(GroupSpec spec, bool abelian) {
  const auto order = spec_order(spec);
  return {spec, to_string(spec), order, abelian, is_prime_power(order)};
}

}  // namespace detail

/// One entry per isomorphism type of abelian group of order <= max_order,
/// written with prime-power moduli (cyclic groups as cyclic:n).
inline std::vector<CatalogEntry> abelian_catalog(std::size_t max_order) {
  std::vector<CatalogEntry> out;
  for (std::uint64_t n = 1; n <= max_order; ++n) {
    const auto factors = numtheory::factorize(n);
    // Cartesian product of exponent partitions, one per prime.
    std::vector<std::vector<std::vector<unsigned>>> per_prime;
    for (const auto& pp : factors) {
      std::vector<std::vector<unsigned>> parts;
      std::vector<unsigned> cur;
      detail::partitions(pp.multiplicity, pp.multiplicity, cur, parts);
      per_prime.push_back(std::move(parts));
    }
    std::vector<std::size_t> pick(per_prime.size(), 0);
    while (true) {
      std::vector<std::uint64_t> moduli;
      bool cyclic = true;
      for (std::size_t i = 0; i < per_prime.size(); ++i) {
        auto parts = per_prime[i][pick[i]];
        if (parts.size() > 1) cyclic = false;
        std::sort(parts.begin(), parts.end());
        for (auto e : parts) moduli.push_back(numtheory::PrimePower{factors[i].prime, e}.value());
      }
      out.push_back(detail::make_entry(cyclic ? GroupSpec::cyclic(n) : GroupSpec::abelian(moduli), true));
      std::size_t i = 0;
      while (i < pick.size() && ++pick[i] == per_prime[i].size()) pick[i++] = 0;
      if (i == pick.size()) break;
    }
  }
  return out;
}

/// Abelian catalog plus the named nonabelian families, ordered by group order.
inline std::vector<CatalogEntry> catalog(std::size_t max_order) {
  std::vector<CatalogEntry> out = abelian_catalog(max_order);
  std::vector<GroupSpec> named;
  for (std::uint64_t n = 3; n <= 32; ++n) named.push_back(GroupSpec::dihedral(n));
  named.push_back(GroupSpec::quaternion());
  for (std::uint64_t n = 3; n <= 16; ++n) named.push_back(GroupSpec::dicyclic(n));
  named.push_back(GroupSpec::symmetric(4));
  named.push_back(GroupSpec::alternating(4));
  named.push_back(GroupSpec::alternating(5));
  for (auto [q, m] : std::vector<std::pair<int, int>>{{7, 3}, {5, 4}, {7, 6}, {13, 3}, {11, 5}, {13, 4}})
    named.push_back(GroupSpec::metacyclic(q, m));
  named.push_back(GroupSpec::heisenberg(3));
  named.push_back(GroupSpec::modular_p3(3));
  for (auto& spec : named)
    if (spec_order(spec) <= max_order) out.push_back(detail::make_entry(spec, false));
  std::stable_sort(out.begin(), out.end(), [](const CatalogEntry& a, const CatalogEntry& b) { return a.order < b.order; });
  return out;
}

// ---------------------------------------------------------------------------
// Results and the shared workspace

enum class Status { kPass, kFail, kSkipped };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::kPass: return "PASS";
    case Status::kFail: return "FAIL";
    case Status::kSkipped: return "SKIPPED";
  }
  return "?";
}

struct CheckResult {
  std::string id;
  Status status = Status::kPass;
  std::string detail;
  double seconds = 0.0;
};

struct Options {
  /// Upper bound on catalog group orders.
  std::size_t max_order = 64;
  EnumerationLimits limits{1000, std::uint64_t{1} << 18};
};

/// Memoises groups and their relations across checks.
class Workspace {
 public:
  explicit Workspace(Options options = {}) : options_(options) {}

  const Options& options() const { return options_; }

  const FiniteGroup& group(const GroupSpec& spec) {
    const auto key = to_string(spec);
    auto it = groups_.find(key);
    if (it == groups_.end()) it = groups_.emplace(key, build_group(spec)).first;
    return it->second;
  }

  const ReachRelation& reach(const GroupSpec& spec) {
    const auto key = to_string(spec);
    auto it = reach_.find(key);
    if (it == reach_.end()) it = reach_.emplace(key, endo_reachability(group(spec), options_.limits)).first;
    return it->second;
  }

  const Partition& orbits(const GroupSpec& spec) {
    const auto key = to_string(spec);
    auto it = orbits_.find(key);
    if (it == orbits_.end()) it = orbits_.emplace(key, automorphism_orbits(group(spec), options_.limits)).first;
    return it->second;
  }

  Digraph endo(const GroupSpec& spec) { return endo_digraph(group(spec), reach(spec)); }

  CondensedDigraph compressed(const GroupSpec& spec) {
    return condense(group(spec), reach(spec), orbits(spec), true);
  }

 private:
  Options options_;
  std::map<std::string, FiniteGroup> groups_;
  std::map<std::string, ReachRelation> reach_;
  std::map<std::string, Partition> orbits_;
};

namespace detail {

/// Collects failures and notes for one check.
class Findings {
 public:
  void fail(const std::string& what) {
    if (failures_.size() < 8) failures_.push_back(what);
    ++failure_count_;
  }
  void skip(const std::string& why) { skipped_.push_back(why); }
  std::ostringstream& note() { return notes_; }

  CheckResult finish(std::string id, std::chrono::steady_clock::time_point start) const {
    CheckResult r;
    r.id = std::move(id);
    std::ostringstream os;
    if (failure_count_ > 0) {
      r.status = Status::kFail;
      os << failure_count_ << " failure(s): ";
      for (std::size_t i = 0; i < failures_.size(); ++i) os << (i ? "; " : "") << failures_[i];
      if (failure_count_ > failures_.size()) os << "; ...";
      os << " | ";
    } else if (!skipped_.empty()) {
      r.status = Status::kSkipped;
    }
    for (const auto& s : skipped_) os << "skipped: " << s << " | ";
    os << notes_.str();
    r.detail = os.str();
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
  }

 private:
  std::vector<std::string> failures_;
  std::size_t failure_count_ = 0;
  std::vector<std::string> skipped_;
  std::ostringstream notes_;
};

inline bool is_cyclic(const FiniteGroup& g) {
  for (Element x = 0; x < g.order(); ++x)
    if (g.order_of(x) == g.order()) return true;
  return false;
}

/// Trivial group included.
inline bool is_elementary_abelian(const FiniteGroup& g) {
  if (!g.is_abelian()) return false;
  std::uint32_t common = 0;
  for (Element x = 1; x < g.order(); ++x) {
    if (!numtheory::is_prime(g.order_of(x))) return false;
    if (common == 0) common = g.order_of(x);
    if (g.order_of(x) != common) return false;
  }
  return true;
}

/// (Z_{p^a})^m x (Z_{p^{a+1}})^n with a >= 1 (trivial group included).
inline bool has_complete_shape(const FiniteGroup& g) {
  const auto inv = primary_invariants(g);
  if (inv.empty()) return true;
  if (inv.size() > 1) return false;
  const auto& orders = inv.begin()->second;
  const std::uint64_t p = inv.begin()->first;
  if (orders.back() == orders.front()) return true;
  return orders.back() == orders.front() * p &&
         std::all_of(orders.begin(), orders.end(), [&](auto o) { return o == orders.front() || o == orders.back(); });
}

inline Element element_named(const FiniteGroup& g, const std::string& name) {
  for (Element x = 0; x < g.order(); ++x)
    if (g.element_name(x) == name) return x;
  throw ContractError("no element named " + name + " in " + g.label());
}

/// Largest index |G : C(a)| over a in G.
inline std::size_t max_centralizer_index(const FiniteGroup& g) {
  std::size_t best = 1;
  for (Element a = 0; a < g.order(); ++a) best = std::max(best, g.order() / centralizer(g, a).size());
  return best;
}

inline std::string describe_witness(const Digraph& a, const Digraph& b, const std::vector<std::size_t>& phi) {
  std::ostringstream os;
  for (std::size_t v = 0; v < phi.size(); ++v) os << (v ? " " : "") << a.label(v) << "->" << b.label(phi[v]);
  return os.str();
}

// --- figure comparison ------------------------------------------------------

using ArcLabel = std::pair<std::string, std::string>;

struct Figure {
  std::set<std::string> vertices;
  std::set<ArcLabel> arcs;
};

struct FigureDiff {
  std::vector<std::string> vertex_problems;
  std::vector<ArcLabel> missing;
  std::vector<ArcLabel> extra;
  bool ok() const { return vertex_problems.empty() && missing.empty() && extra.empty(); }
};

/// Compares a compressed digraph with a hand-drawn figure whose vertices
/// are named by `label_of(element)`.
inline FigureDiff compare_figure(const FiniteGroup& g, const Partition& orbits, const CondensedDigraph& c,
                                 const std::function<std::string(Element)>& label_of, const Figure& fig) {
  FigureDiff diff;
  std::map<std::string, std::size_t> label_block;
  std::set<std::string> seen;
  for (std::size_t b = 0; b < orbits.size(); ++b) {
    if (orbits.representative(b) == 0) continue;
    const std::string label = label_of(orbits.representative(b));
    for (Element x : orbits.blocks[b])
      if (label_of(x) != label) {
        diff.vertex_problems.push_back("orbit of " + g.element_name(orbits.representative(b)) + " mixes " + label +
                                       " and " + label_of(x));
        break;
      }
    if (!label_block.emplace(label, b).second) diff.vertex_problems.push_back(label + " is split over several orbits");
    seen.insert(label);
  }
  if (seen != fig.vertices) {
    std::ostringstream os;
    os << "vertex labels {";
    for (const auto& s : seen) os << " " << s;
    os << " } differ from the figure";
    diff.vertex_problems.push_back(os.str());
  }
  std::set<ArcLabel> actual;
  for (const auto& [i, j] : c.digraph.arcs()) actual.emplace(label_of(c.representatives[i]), label_of(c.representatives[j]));
  std::set_difference(fig.arcs.begin(), fig.arcs.end(), actual.begin(), actual.end(), std::back_inserter(diff.missing));
  std::set_difference(actual.begin(), actual.end(), fig.arcs.begin(), fig.arcs.end(), std::back_inserter(diff.extra));
  return diff;
}

inline std::string describe(const FigureDiff& d) {
  std::ostringstream os;
  for (const auto& p : d.vertex_problems) os << p << "; ";
  for (const auto& [a, b] : d.missing) os << "missing arc " << a << "->" << b << "; ";
  for (const auto& [a, b] : d.extra) os << "extra arc " << a << "->" << b << "; ";
  return os.str();
}

inline std::string power_label(const std::string& sym, std::uint64_t d) {
  return d == 1 ? sym : sym + "^" + std::to_string(d);
}

/// Figure for D_{2n}: rotation classes as in Z_n, plus the reflections.
inline Figure dihedral_figure(std::uint64_t n) {
  Figure f;
  std::vector<std::uint64_t> divs;
  for (auto d : numtheory::divisors(n))
    if (d < n) divs.push_back(d);
  for (auto d : divs) f.vertices.insert(power_label("r", d));
  f.vertices.insert("s");
  for (auto d : divs)
    for (auto k : divs)
      if (d != k && k % d == 0) f.arcs.emplace(power_label("r", d), power_label("r", k));
  if (n % 2 == 0) {
    for (auto d : divs)
      if (d % 2 == 1) f.arcs.emplace(power_label("r", d), "s");
    f.arcs.emplace("s", power_label("r", n / 2));
  }
  return f;
}

inline std::function<std::string(Element)> dihedral_labeler(std::uint64_t n) {
  return [n](Element x) -> std::string {
    if (x == 0) return "e";
    if (x >= n) return "s";
    return power_label("r", std::gcd<std::uint64_t>(x, n));
  };
}

/// Figure for Dic_n with n = 2 (mod 4).
inline Figure dicyclic_figure(std::uint64_t n) {
  Figure f;
  std::vector<std::uint64_t> divs;
  for (auto d : numtheory::divisors(2 * n))
    if (d < 2 * n) divs.push_back(d);
  for (auto d : divs) f.vertices.insert(power_label("a", d));
  f.vertices.insert("x");
  for (auto d : divs)
    for (auto k : divs)
      if (d != k && k % d == 0) f.arcs.emplace(power_label("a", d), power_label("a", k));
  for (auto d : divs)
    if (d % 2 == 1) f.arcs.emplace(power_label("a", d), "x");
  f.arcs.emplace("x", power_label("a", n));
  f.arcs.emplace("x", power_label("a", n / 2));
  return f;
}

inline std::function<std::string(Element)> dicyclic_labeler(std::uint64_t n) {
  return [n](Element x) -> std::string {
    if (x == 0) return "e";
    if (x >= 2 * n) return "x";
    return power_label("a", std::gcd<std::uint64_t>(x, 2 * n));
  };
}

/// Cycle type as drawn in the figures: (4)(2), (2^2), ...
inline std::string cycle_type_label(const std::vector<unsigned>& type) {
  if (type.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < type.size();) {
    std::size_t j = i;
    while (j < type.size() && type[j] == type[i]) ++j;
    out += "(" + std::to_string(type[i]);
    if (j - i > 1) out += "^" + std::to_string(j - i);
    out += ")";
    i = j;
  }
  return out;
}

inline std::optional<Mapping> find_endomorphism(const FiniteGroup& g, const EnumerationLimits& limits,
                                                const std::function<bool(std::span<const Element>)>& wanted) {
  std::optional<Mapping> found;
  for_each_endomorphism(
      g,
      [&](std::span<const Element> im) {
        if (!found && wanted(im)) found = Mapping{g.label(), {im.begin(), im.end()}};
      },
      limits);
  return found;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Checks

using Clock = std::chrono::steady_clock;

/// Group axioms for every listed group.
inline CheckResult check_integrity(const std::vector<FiniteGroup>& groups) {
  const auto start = Clock::now();
  detail::Findings f;
  for (const auto& g : groups)
    if (auto v = find_integrity_violation(g)) f.fail(g.label() + ": " + *v);
  f.note() << groups.size() << " groups checked";
  return f.finish("T1", start);
}

inline CheckResult check_t1(Workspace& ws) {
  std::vector<FiniteGroup> groups;
  for (const auto& e : catalog(ws.options().max_order)) {
    const auto& g = ws.group(e.spec);
    if (g.order() != e.order) throw ContractError("order mismatch for " + e.name);
    groups.push_back(g);
  }
  for (auto spec : {"heisenberg:5", "modular_p3:5", "sl25", "agl32", "symmetric:6"}) groups.push_back(build_group(spec));
  return check_integrity(groups);
}

inline CheckResult check_t2(Workspace& ws) {
  const auto start = Clock::now();
  detail::Findings f;
  for (std::uint64_t n = 1; n <= 60; ++n) {
    const auto eg = symmetrise(ws.endo(GroupSpec::cyclic(n)));
    std::ostringstream where;
    where << "Z" << n << ": ";
    if (eg.edge_count() != numtheory::cyclic_edge_count(n))
      f.fail(where.str() + "edges " + std::to_string(eg.edge_count()) + " vs formula " +
             std::to_string(numtheory::cyclic_edge_count(n)));
    if (n >= 2 && maximal_cliques(eg).size() != numtheory::cyclic_maximal_clique_count(n))
      f.fail(where.str() + "maximal clique count differs from multinomial");
    const auto cc = clique_and_chromatic(eg);
    const auto expected = numtheory::cyclic_clique_number(n);
    if (cc.clique_number != expected || cc.chromatic_number != expected)
      f.fail(where.str() + "omega=" + std::to_string(cc.clique_number) + " chi=" + std::to_string(cc.chromatic_number) +
             " expected " + std::to_string(expected));
  }
  f.note() << "n = 1..60: edge count, maximal clique count, omega = chi all match closed forms";
  return f.finish("T2", start);
}

inline CheckResult check_t3(Workspace& ws) {
  const auto start = Clock::now();
  detail::Findings f;
  const auto spec = GroupSpec::cyclic(12);
  const std::vector<ElementSet> expected{{0}, {1, 5, 7, 11}, {2, 10}, {3, 9}, {4, 8}, {6}};
  if (ws.orbits(spec).blocks != expected) f.fail("Z12 automorphism orbits differ from the lattice figure");
  const auto eg = symmetrise(ws.endo(spec));
  const auto cliques = maximal_cliques(eg);
  std::vector<std::size_t> sizes;
  for (const auto& c : cliques) sizes.push_back(c.size());
  if (sizes != std::vector<std::size_t>{9, 8, 8}) f.fail("maximal clique sizes are not 9, 8, 8");
  const auto cc = clique_and_chromatic(eg);
  if (cc.clique_number != 9 || cc.chromatic_number != 9) f.fail("omega/chi of EG(Z12) not 9");
  f.note() << "orbits {0},{1,5,7,11},{2,10},{3,9},{4,8},{6}; " << cliques.size() << " maximal cliques; omega = chi = "
           << cc.clique_number;
  return f.finish("T3", start);
}

inline CheckResult check_t4(Workspace& ws) {
  const auto start = Clock::now();
  detail::Findings f;
  std::size_t complete = 0, total = 0;
  for (const auto& e : abelian_catalog(ws.options().max_order)) {
    const auto& g = ws.group(e.spec);
    const bool is_complete = basic_stats(symmetrise(ws.endo(e.spec))).is_complete;
    const bool shape = detail::has_complete_shape(g);
    if (is_complete != shape) f.fail(e.name + (is_complete ? " complete but wrong shape" : " has the shape but EG incomplete"));
    complete += is_complete;
    ++total;
  }
  f.note() << total << " abelian groups, " << complete << " with complete EG";
  return f.finish("T4", start);
}

inline CheckResult check_t5(Workspace& ws) {
  const auto start = Clock::now();
  detail::Findings f;
  std::size_t converse_groups = 0, total = 0;
  for (const auto& e : abelian_catalog(ws.options().max_order)) {
    const auto& g = ws.group(e.spec);
    const auto& rel = ws.reach(e.spec);
    bool converse = true;
    for (Element x = 0; x < g.order(); ++x)
      for (Element y = 0; y < g.order(); ++y) {
        const bool divides = g.order_of(x) % g.order_of(y) == 0;
        if (rel(x, y) && !divides) f.fail(e.name + ": " + g.element_name(x) + " reaches " + g.element_name(y) + " of non-dividing order");
        if (divides && !rel(x, y)) converse = false;
      }
    const bool shape = is_homocyclic_product(g);
    if (converse != shape) f.fail(e.name + ": converse " + (converse ? "holds" : "fails") + " but homocyclic shape is " + (shape ? "true" : "false"));
    if (shape) {
      for (Element x = 0; x < g.order(); ++x)
        for (Element y = 0; y < g.order(); ++y)
          if (homocyclic_arrow(g, x, y) != rel(x, y)) f.fail(e.name + ": homocyclic_arrow disagrees with reachability");
    }
    converse_groups += converse;
    ++total;
  }
  // Z8 x Z2 with a = (4,0), b = (0,1): equal orders, no endomorphism a -> b.
  const auto spec = GroupSpec::abelian({8, 2});
  const auto& g = ws.group(spec);
  const Element a = detail::element_named(g, "(4,0)"), b = detail::element_named(g, "(0,1)");
  if (g.order_of(a) != g.order_of(b) || ws.reach(spec)(a, b)) f.fail("Z8xZ2 counterexample not reproduced");
  f.note() << total << " abelian groups; converse holds on " << converse_groups
           << " (exactly the homocyclic products); Z8xZ2: (4,0) does not reach (0,1)";
  return f.finish("T5", start);
}

inline CheckResult check_t6(Workspace& ws) {
  const auto start = Clock::now();
  detail::Findings f;
  std::size_t planar_count = 0, centralizer_cases = 0, verdicts = 0;
  for (const auto& e : catalog(ws.options().max_order)) {
    const auto& g = ws.group(e.spec);
    const auto eg = symmetrise(ws.endo(e.spec));
    const auto verdict = planarity(eg);
    ++verdicts;
    if (!validate_planarity(eg, verdict)) f.fail(e.name + ": planarity certificate invalid");
    if (e.abelian) {
      if (verdict.planar != (g.order() <= 4)) f.fail(e.name + ": planar=" + (verdict.planar ? "yes" : "no"));
      planar_count += verdict.planar;
    }
    if (detail::max_centralizer_index(g) > 3) {
      ++centralizer_cases;
      if (verdict.planar) f.fail(e.name + ": some |G:C(a)| > 3 yet EG planar");
    }
  }
  f.note() << verdicts << " certified verdicts; " << planar_count << " planar abelian groups (orders <= 4); "
           << centralizer_cases << " groups with |G:C(a)| > 3, all non-planar";
  return f.finish("T6", start);
}

inline CheckResult check_t7(Workspace& ws) {
  const auto start = Clock::now();
  detail::Findings f;
  std::size_t count = 0;
  for (const auto& e : catalog(ws.options().max_order)) {
    if (e.order == 1) continue;
    const auto eg = symmetrise(ws.endo(e.spec));
    const auto stats = basic_stats(eg);
    const auto star = basic_stats(delete_identity(eg));
    if (e.order != 2 && (stats.girth != std::optional<std::size_t>(3) || stats.is_bipartite))
      f.fail(e.name + ": girth/bipartite");
    if (stats.is_tree != (e.order == 2)) f.fail(e.name + ": EG tree=" + (stats.is_tree ? "yes" : "no"));
    if (star.is_tree != (e.order == 2 || e.order == 3)) f.fail(e.name + ": EG* tree=" + (star.is_tree ? "yes" : "no"));
    ++count;
  }
  f.note() << count << " non-trivial groups; EG tree only for Z2, EG* tree only for Z2 and Z3";
  return f.finish("T7", start);
}

inline CheckResult check_t8(Workspace& ws) {
  const auto start = Clock::now();
  detail::Findings f;
  std::size_t count = 0, diconnected = 0;
  for (const auto& e : catalog(std::min<std::size_t>(ws.options().max_order, 32))) {
    const auto& g = ws.group(e.spec);
    const auto c = digraph_connectivity(delete_identity(ws.endo(e.spec)));
    if (c.is_strongly_connected != c.is_complete_digraph || c.has_hamiltonian_cycle != c.is_strongly_connected)
      f.fail(e.name + ": diconnected/complete/Hamiltonian disagree");
    if (c.is_strongly_connected != detail::is_elementary_abelian(g))
      f.fail(e.name + ": diconnected=" + (c.is_strongly_connected ? "yes" : "no"));
    diconnected += c.is_strongly_connected;
    ++count;
  }
  f.note() << count << " groups of order <= 32; " << diconnected << " diconnected, all elementary abelian";
  return f.finish("T8", start);
}

inline CheckResult check_t9(Workspace& ws) {
  const auto start = Clock::now();
  detail::Findings f;
  std::size_t count = 0;
  for (const auto& e : abelian_catalog(ws.options().max_order)) {
    if (!single_point_basis(ws.endo(e.spec))) f.fail(e.name + ": no single point basis");
    ++count;
  }
  const auto q8 = single_point_basis(ws.endo(GroupSpec::quaternion()));
  if (!q8) f.fail("Q8: no single point basis");
  if (single_point_basis(ws.endo(GroupSpec::symmetric(3)))) f.fail("S3 has a single point basis");
  f.note() << count << " abelian groups have a single point basis; Q8 basis "
           << (q8 ? ws.group(GroupSpec::quaternion()).element_name(static_cast<Element>(*q8)) : "none") << "; S3 none";
  return f.finish("T9", start);
}

inline CheckResult check_t10(Workspace& ws) {
  const auto start = Clock::now();
  detail::Findings f;
  for (std::uint64_t p : {3, 5}) {
    const std::vector<GroupSpec> trio{GroupSpec::cyclic(p * p * p), GroupSpec::abelian({p * p, p}), GroupSpec::modular_p3(p)};
    const std::vector<std::size_t> chain{p * p * (p - 1), p * (p - 1), p - 1, 1};
    std::vector<Digraph> digraphs;
    for (const auto& s : trio) {
      digraphs.push_back(ws.endo(s));
      const auto& g = ws.group(s);
      const auto classes = condense(g, ws.reach(s), endomorphism_classes(g, ws.reach(s)), false);
      auto sizes = classes.sizes;
      std::sort(sizes.begin(), sizes.end(), std::greater<>());
      if (sizes != chain || classes.digraph.arc_count() != chain.size() * (chain.size() - 1) / 2)
        f.fail(to_string(s) + ": class chain differs from p^2(p-1), p(p-1), p-1, 1");
    }
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i + 1; j < 3; ++j) {
        const auto iso = digraph_isomorphic(digraphs[i], digraphs[j]);
        if (!iso.isomorphic) f.fail(to_string(trio[i]) + " vs " + to_string(trio[j]) + " not isomorphic");
        else if (p == 3 && i == 0 && j == 1)
          f.note() << "bijection " << ws.group(trio[0]).label() << "->" << ws.group(trio[1]).label() << ": "
                   << detail::describe_witness(digraphs[0], digraphs[1], iso.witness) << "; ";
      }
    const auto hp = GroupSpec::heisenberg(p), zp3 = GroupSpec::abelian({p, p, p});
    const auto hd = ws.endo(hp);
    if (!basic_stats(symmetrise(hd)).is_complete) f.fail("EG(H" + std::to_string(p * p * p) + ") not complete");
    if (digraph_isomorphic(hd, ws.endo(zp3)).isomorphic) f.fail("EG(H_p) isomorphic to EG(Z_p^3)");
    f.note() << "p=" << p << ": three digraphs pairwise isomorphic, chain " << chain[0] << "," << chain[1] << ","
             << chain[2] << ",1; EG(H_p) complete, not isomorphic to EG(Z_p^3); ";
  }
  return f.finish("T10", start);
}

inline CheckResult check_t11(Workspace& ws) {
  const auto start = Clock::now();
  detail::Findings f;
  for (auto [q, r] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{{7, 3}, {11, 5}}) {
    const auto spec = GroupSpec::metacyclic(q, r);
    const auto& g = ws.group(spec);
    const auto classes = endomorphism_classes(g, ws.reach(spec));
    const auto& orbits = ws.orbits(spec);
    std::set<std::size_t> class_ids, orbit_ids;
    std::size_t count = 0;
    for (Element x = 0; x < g.order(); ++x) {
      if (g.order_of(x) != r) continue;
      ++count;
      class_ids.insert(classes.block_of[x]);
      orbit_ids.insert(orbits.block_of[x]);
    }
    const std::string name = g.label();
    if (count != q * (r - 1)) f.fail(name + ": wrong number of elements of order r");
    if (class_ids.size() != 1) f.fail(name + ": order-r elements span " + std::to_string(class_ids.size()) + " endomorphism classes");
    if (orbit_ids.size() != r - 1) f.fail(name + ": " + std::to_string(orbit_ids.size()) + " orbits instead of r-1");
    for (auto b : orbit_ids)
      if (orbits.blocks[b].size() != q) f.fail(name + ": orbit of size " + std::to_string(orbits.blocks[b].size()));
    f.note() << name << ": " << count << " elements of order " << r << " in one endomorphism class, " << orbit_ids.size()
             << " orbits of size " << q << "; ";
  }
  return f.finish("T11", start);
}

inline CheckResult check_t12(Workspace& ws) {
  const auto start = Clock::now();
  detail::Findings f;
  auto compare = [&](const GroupSpec& spec, const detail::Figure& fig, const std::function<std::string(Element)>& lab) {
    const auto& g = ws.group(spec);
    const auto diff = detail::compare_figure(g, ws.orbits(spec), ws.compressed(spec), lab, fig);
    if (!diff.ok()) {
      f.fail(g.label() + ": " + detail::describe(diff) +
             "(reachability is exhaustive, so no endomorphism realises a missing arc)");
    } else {
      f.note() << g.label() << " matches (" << fig.vertices.size() << " vertices, " << fig.arcs.size() << " arcs); ";
    }
  };
  compare(GroupSpec::dihedral(5), detail::dihedral_figure(5), detail::dihedral_labeler(5));
  compare(GroupSpec::dihedral(6), detail::dihedral_figure(6), detail::dihedral_labeler(6));
  compare(GroupSpec::dicyclic(6), detail::dicyclic_figure(6), detail::dicyclic_labeler(6));
  for (std::uint64_t n : {4, 6, 8, 10}) {
    const auto spec = GroupSpec::dicyclic(n);
    const auto c = ws.compressed(spec);
    const auto lab = detail::dicyclic_labeler(n);
    bool arc = false;
    for (const auto& [i, j] : c.digraph.arcs())
      arc = arc || (lab(c.representatives[i]) == "x" && lab(c.representatives[j]) == detail::power_label("a", n / 2));
    if (arc != (n % 4 == 2)) f.fail("Dic" + std::to_string(n) + ": arc [x]->[a^n/2] " + (arc ? "present" : "absent"));
  }
  f.note() << "arc [x]->[a^(n/2)] present exactly for n = 6, 10 among n = 4, 6, 8, 10";
  return f.finish("T12", start);
}

inline CheckResult check_t13(Workspace& ws) {
  const auto start = Clock::now();
  detail::Findings f;
  const auto& limits = ws.options().limits;

  auto run = [&](unsigned degree, const detail::Figure& fig, const std::map<std::string, std::string>& fusion) {
    auto pg = build_permutation_group(degree, false);
    const FiniteGroup g = pg.group.with_generators(greedy_minimal_generators(pg.group));
    auto label = [&](Element x) {
      const auto raw = detail::cycle_type_label(pg.cycle_type(x));
      const auto it = fusion.find(raw);
      return it == fusion.end() ? raw : it->second;
    };
    const auto rel = endo_reachability(g, limits);
    const auto orbits = automorphism_orbits(g, limits);
    const auto c = condense(g, rel, orbits, true);
    const auto diff = detail::compare_figure(g, orbits, c, label, fig);
    if (diff.ok()) {
      f.note() << g.label() << " matches the figure; ";
      return;
    }
    std::string msg = g.label() + ": " + detail::describe(diff);
    for (const auto& [from, to] : diff.extra) {
      // Witness: an endomorphism taking the source class representative into the target class.
      Element src = 0;
      for (std::size_t i = 0; i < c.size(); ++i)
        if (label(c.representatives[i]) == from) src = c.representatives[i];
      const auto w = detail::find_endomorphism(g, limits, [&](std::span<const Element> im) { return label(im[src]) == to; });
      if (w) {
        const auto ki = kernel_and_image(g, *w);
        msg += "witness endomorphism with |kernel|=" + std::to_string(ki.kernel.size()) + " maps " + g.element_name(src) +
               " to " + g.element_name((*w)(src)) + " ";
      }
    }
    f.fail(msg);
  };

  detail::Figure s4{{"(2)", "(2^2)", "(3)", "(4)"}, {{"(4)", "(2)"}, {"(4)", "(2^2)"}}};
  run(4, s4, {});

  if (limits.max_order >= 720) {
    detail::Figure s6{{"(2)", "(2^2)", "(3)", "(4)(2)", "(4)", "(5)", "(6)"},
                      {{"(6)", "(2^2)"}, {"(4)", "(2)"}, {"(4)", "(2^2)"}, {"(6)", "(2)"}}};
    run(6, s6, {{"(2^3)", "(2)"}, {"(3^2)", "(3)"}, {"(3)(2)", "(6)"}});
  } else {
    f.skip("S6 needs an enumeration cap of at least 720 (current " + std::to_string(limits.max_order) + ")");
  }

  const auto a5 = ws.compressed(GroupSpec::alternating(5));
  if (a5.digraph.arc_count() != 0) f.fail("A5 compressed digraph has arcs");
  else f.note() << "A5 compressed digraph: " << a5.size() << " vertices, no arcs";
  return f.finish("T13", start);
}

inline CheckResult check_t14(Workspace& ws) {
  const auto start = Clock::now();
  detail::Findings f;
  for (auto [q, m] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{{7, 3}, {13, 4}, {11, 5}, {13, 6}}) {
    const auto spec = GroupSpec::metacyclic(q, m);
    const auto compressed = symmetrise(ws.compressed(spec).digraph);
    const auto target = disjoint_union(SimpleGraph::complete(1), delete_identity(symmetrise(ws.endo(GroupSpec::cyclic(m)))));
    const std::string name = ws.group(spec).label();
    if (!graph_isomorphic(compressed, target).isomorphic) f.fail(name + ": compressed EG is not K1 + EG*(Z_m)");
    if (detail::is_prime_power(m) &&
        !graph_isomorphic(compressed, disjoint_union(SimpleGraph::complete(1), SimpleGraph::complete(m - 1))).isomorphic)
      f.fail(name + ": compressed EG is not K1 + K_{m-1}");
    f.note() << name << " ok; ";
  }
  return f.finish("T14", start);
}

inline CheckResult check_t15(Workspace& ws) {
  const auto start = Clock::now();
  detail::Findings f;
  std::size_t pairs = 0;
  const auto entries = catalog(std::min<std::size_t>(ws.options().max_order, 24));
  for (std::size_t i = 0; i < entries.size(); ++i)
    for (std::size_t j = 0; j < entries.size(); ++j) {
      const auto &a = entries[i], &b = entries[j];
      if (a.order < 2 || b.order <= a.order || a.order * b.order > 48 || std::gcd(a.order, b.order) != 1) continue;
      const auto& g = ws.group(a.spec);
      const auto& h = ws.group(b.spec);
      const auto product = direct_product(g, h);
      const auto lhs = endo_digraph(product, ws.options().limits);
      const auto rhs = strong_product(ws.endo(a.spec), ws.endo(b.spec));
      if (!digraph_isomorphic(lhs, rhs).isomorphic) f.fail(product.label() + ": not the strong product");
      ++pairs;
    }
  // Symmetrising does not commute with the strong product.
  Digraph arc(std::vector<std::string>{"x", "x'"});
  arc.add_arc(0, 1);
  const auto prod = strong_product(arc, arc);  // (x,y)=0 (x,y')=1 (x',y)=2 (x',y')=3
  Digraph sym(std::vector<std::string>{"x", "x'"});
  sym.add_arc(0, 1);
  sym.add_arc(1, 0);
  const auto sym_prod = symmetrise(strong_product(sym, sym));
  if (prod.has_arc(1, 2) || prod.has_arc(2, 1)) f.fail("strong product of single arcs joins (x,y') and (x',y)");
  if (!basic_stats(sym_prod).is_complete || basic_stats(symmetrise(prod)).is_complete)
    f.fail("symmetrisation example not reproduced");
  f.note() << pairs << " coprime pairs with |G||H| <= 48; single-arc example: symmetrised product has "
           << symmetrise(prod).edge_count() << " edges, product of symmetrisations is K4";
  return f.finish("T15", start);
}

inline CheckResult check_t16(Workspace& ws) {
  const auto start = Clock::now();
  detail::Findings f;
  std::size_t count = 0, equal = 0;
  for (const auto& e : abelian_catalog(ws.options().max_order)) {
    const auto& g = ws.group(e.spec);
    const auto p = power_digraph(g);
    const auto d = ws.endo(e.spec);
    bool subgraph = true, same = true;
    for (std::size_t x = 0; x < g.order(); ++x) {
      subgraph = subgraph && p.successors(x).is_subset_of(d.successors(x));
      same = same && p.successors(x) == d.successors(x);
    }
    const bool cyclic = detail::is_cyclic(g);
    if (!subgraph) f.fail(e.name + ": power digraph not a subgraph");
    if (same != cyclic) f.fail(e.name + ": equality " + (same ? "holds" : "fails") + " but cyclic=" + (cyclic ? "yes" : "no"));
    std::size_t diff = 0;
    for (const auto& [x, y] : d.arcs()) diff += !p.has_arc(x, y);
    if ((diff == 0) != cyclic) f.fail(e.name + ": difference digraph emptiness disagrees with cyclicity");
    equal += same;
    ++count;
  }
  f.note() << count << " abelian groups; power digraph spanning subgraph throughout; equal for the " << equal << " cyclic ones";
  return f.finish("T16", start);
}

inline CheckResult check_t17(Workspace& ws) {
  const auto start = Clock::now();
  detail::Findings f;
  std::size_t equal = 0, count = 0;
  for (const auto& e : abelian_catalog(ws.options().max_order)) {
    const auto& g = ws.group(e.spec);
    // Arcs into the identity come from the trivial endomorphism and never
    // from automorphisms, so the comparison is made without the identity.
    const bool same = delete_identity(ws.endo(e.spec)) == delete_identity(auto_digraph(g, ws.orbits(e.spec)));
    if (same != detail::is_elementary_abelian(g)) f.fail(e.name + ": EG = AG is " + (same ? "true" : "false"));
    equal += same;
    ++count;
  }
  f.note() << count << " abelian groups, EG = AG (identity deleted) for " << equal << " elementary abelian ones; ";

  const auto sl = GroupSpec::sl25();
  const auto& g1 = ws.group(sl);
  const auto info = structural_predicates(g1);
  if (!info.is_perfect || info.is_simple != std::optional<bool>(false) || info.normal_subgroups->size() != 3)
    f.fail("SL(2,5): expected perfect, non-simple, 3 normal subgroups");
  const auto z = info.center;
  std::size_t endos = 0, with_kernel_z = 0;
  for_each_endomorphism(
      g1,
      [&](std::span<const Element> im) {
        ++endos;
        ElementSet kernel;
        for (Element x = 0; x < g1.order(); ++x)
          if (im[x] == 0) kernel.push_back(x);
        with_kernel_z += kernel == z;
      },
      ws.options().limits);
  if (z.size() != 2 || with_kernel_z != 0) f.fail("SL(2,5): endomorphism with kernel {+-I} found");
  f.note() << "SL(2,5): perfect, not simple, " << endos << " endomorphisms, none with kernel {+-I}; ";

  const auto agl = build_agl32_detailed();
  const bool perfect = derived_subgroup(agl.group).size() == agl.group.order();
  const auto verified = verify_homomorphism(agl.group, agl.linear_part);
  if (!perfect) f.fail("AGL(3,2) not perfect");
  if (const auto* m = std::get_if<Mapping>(&verified)) {
    const auto ki = kernel_and_image(agl.group, *m);
    if (ki.kernel != agl.translations) f.fail("AGL(3,2) retraction kernel is not the translation subgroup");
    f.note() << "AGL(3,2): perfect; retraction onto GL(3,2) verified, kernel size " << ki.kernel.size() << ", image size "
             << ki.image.size();
  } else {
    f.fail("AGL(3,2) retraction is not a homomorphism");
  }
  return f.finish("T17", start);
}

inline CheckResult check_t18(Workspace& ws) {
  const auto start = Clock::now();
  detail::Findings f;
  std::size_t groups = 0, pairs = 0;
  for (const auto& e : abelian_catalog(ws.options().max_order)) {
    if (!e.p_group) continue;
    const auto p = numtheory::factorize(e.order).front().prime;
    if (p != 2 && p != 3) continue;
    const auto& g = ws.group(e.spec);
    const AbelianCoordinates coords(g);
    // Sort coordinates by exponent so the profile is nondecreasing.
    std::vector<std::size_t> perm(coords.orders().size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::stable_sort(perm.begin(), perm.end(), [&](auto a, auto b) { return coords.orders()[a] < coords.orders()[b]; });
    auto exponent = [p](std::uint64_t q) {
      unsigned e = 0;
      while (q > 1) {
        q /= p;
        ++e;
      }
      return e;
    };
    std::vector<unsigned> profile;
    for (auto j : perm) profile.push_back(exponent(coords.orders()[j]));
    std::vector<std::vector<unsigned>> val(g.order());
    for (Element x = 0; x < g.order(); ++x)
      for (std::size_t k = 0; k < perm.size(); ++k) {
        std::uint64_t c = coords.of(x)[perm[k]];
        unsigned v = 0;
        if (c == 0) v = profile[k];
        else
          while (c % p == 0) {
            c /= p;
            ++v;
          }
        val[x].push_back(v);
      }
    const auto& rel = ws.reach(e.spec);
    for (Element x = 0; x < g.order(); ++x)
      for (Element y = 0; y < g.order(); ++y) {
        ++pairs;
        if (abelian_p_arrow(profile, p, val[x], val[y]) != rel(x, y))
          f.fail(e.name + ": criterion disagrees on " + g.element_name(x) + " -> " + g.element_name(y));
      }
    ++groups;
  }
  f.note() << groups << " abelian 2- and 3-groups, " << pairs << " element pairs agree";
  return f.finish("T18", start);
}

inline const std::vector<std::string>& check_ids() {
  static const std::vector<std::string> ids{"T1",  "T2",  "T3",  "T4",  "T5",  "T6",  "T7",  "T8",  "T9",
                                            "T10", "T11", "T12", "T13", "T14", "T15", "T16", "T17", "T18"};
  return ids;
}

inline CheckResult run_check(const std::string& id, Workspace& ws) {
  static const std::map<std::string, CheckResult (*)(Workspace&)> table{
      {"T1", check_t1},   {"T2", check_t2},   {"T3", check_t3},   {"T4", check_t4},   {"T5", check_t5},
      {"T6", check_t6},   {"T7", check_t7},   {"T8", check_t8},   {"T9", check_t9},   {"T10", check_t10},
      {"T11", check_t11}, {"T12", check_t12}, {"T13", check_t13}, {"T14", check_t14}, {"T15", check_t15},
      {"T16", check_t16}, {"T17", check_t17}, {"T18", check_t18}};
  const auto it = table.find(id);
  if (it == table.end()) throw ParameterError("unknown check id '" + id + "'");
  const auto start = Clock::now();
  try {
    return it->second(ws);
  } catch (const SizeError& e) {
    CheckResult r{id, Status::kSkipped, std::string("size cap: ") + e.what(), 0.0};
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return r;
  }
}

inline std::vector<CheckResult> run_all(Workspace& ws) {
  std::vector<CheckResult> out;
  for (const auto& id : check_ids()) out.push_back(run_check(id, ws));
  return out;
}

inline std::string format_result(const CheckResult& r) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(2);
  os << r.id << " " << to_string(r.status) << " (" << r.seconds << "s) " << r.detail;
  return os.str();
}

}  // namespace endograph::verify
