#pragma once

// Directed power graph and its relation to the endomorphism digraph.

#include <vector>

#include "endograph/digraph.hpp"
#include "endograph/errors.hpp"
#include "endograph/group.hpp"
#include "endograph/hom.hpp"

namespace endograph {

/// Arc x -> y whenever y = x^r for some r >= 1 and y != x.  Each cyclic
/// subgroup is walked once, from its smallest generator.
inline Digraph power_digraph(const FiniteGroup& g) {
  Digraph d(detail::element_labels(g));
  std::vector<char> walked(g.order(), 0);
  std::vector<Element> cycle;
  for (Element x = 0; x < g.order(); ++x) {
    if (walked[x]) continue;
    cycle.clear();
    Element p = x;
    do {
      cycle.push_back(p);
      p = g.mul(p, x);
    } while (p != x);
    // Every generator of <x> has the same power set; mark them all.
    const std::uint32_t ord = g.order_of(x);
    for (std::uint32_t k = 1; k <= ord; ++k) {
      if (std::gcd(k, ord) != 1) continue;
      const Element gen = g.power(x, k);
      walked[gen] = 1;
      for (Element y : cycle)
        if (y != gen) d.add_arc(gen, y);
    }
  }
  return d;
}

struct SpanningCheck {
  bool is_subgraph = false;
  bool is_equal = false;
};

namespace detail {

inline void require_abelian(const FiniteGroup& g, const char* what) {
  if (!g.is_abelian()) throw ContractError(std::string(what) + ": group must be abelian");
}

}  // namespace detail

inline SpanningCheck spanning_subgraph_check(const FiniteGroup& g, const EnumerationLimits& limits = {}) {
  detail::require_abelian(g, "spanning_subgraph_check");
  const Digraph p = power_digraph(g), e = endo_digraph(g, limits);
  SpanningCheck out{true, true};
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (!p.successors(x).is_subset_of(e.successors(x))) out.is_subgraph = false;
    if (p.successors(x) != e.successors(x)) out.is_equal = false;
  }
  return out;
}

/// Arcs of the endomorphism digraph that are not power arcs.
inline Digraph difference_digraph(const FiniteGroup& g, const EnumerationLimits& limits = {}) {
  detail::require_abelian(g, "difference_digraph");
  const Digraph p = power_digraph(g), e = endo_digraph(g, limits);
  Digraph d(e.labels());
  for (const auto& [x, y] : e.arcs())
    if (!p.has_arc(x, y)) d.add_arc(x, y);
  return d;
}

}  // namespace endograph
