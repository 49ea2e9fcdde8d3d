#include <set>
#include <string>

#include <gtest/gtest.h>

#include "endograph/errors.hpp"
#include "endograph/verify.hpp"

using namespace endograph;
using namespace endograph::verify;
namespace vd = endograph::verify::detail;

TEST(Catalog, AbelianCountsPerOrder) {
  // Number of abelian groups of order 1..8: 1,1,1,2,1,1,1,3.
  EXPECT_EQ(abelian_catalog(8).size(), 11u);
  // Orders 16 and 32 have 5 and 7 abelian groups.
  std::size_t order16 = 0, order32 = 0;
  for (const auto& e : abelian_catalog(64)) {
    order16 += e.order == 16;
    order32 += e.order == 32;
  }
  EXPECT_EQ(order16, 5u);
  EXPECT_EQ(order32, 7u);
  EXPECT_EQ(abelian_catalog(64).size(), 117u);
}

TEST(Catalog, EntriesAreDistinctAndBuildable) {
  std::set<std::string> names;
  for (const auto& e : catalog(64)) {
    EXPECT_TRUE(names.insert(e.name).second) << e.name;
    EXPECT_EQ(build_group(e.spec).order(), e.order) << e.name;
  }
}

TEST(Catalog, NamedEntries) {
  std::set<std::string> names4, names27;
  for (const auto& e : catalog(4)) names4.insert(e.name);
  EXPECT_TRUE(names4.count("cyclic:4"));
  EXPECT_TRUE(names4.count("abelian:2,2"));
  for (const auto& e : catalog(27)) names27.insert(e.name);
  EXPECT_TRUE(names27.count("heisenberg:3"));
  EXPECT_TRUE(names27.count("modular_p3:3"));
  const auto c = catalog(64);
  EXPECT_TRUE(std::is_sorted(c.begin(), c.end(), [](const auto& a, const auto& b) { return a.order < b.order; }));
}

TEST(Checks, CorruptedTableFailsIntegrity) {
  const auto z4 = build_group("cyclic:4");
  std::vector<Element> table(z4.table().begin(), z4.table().end());
  std::swap(table[1 * 4 + 2], table[1 * 4 + 3]);
  const auto bad = FiniteGroup::from_table("Z4 corrupted", 4, table, {1});
  const auto r = check_integrity({z4, bad});
  EXPECT_EQ(r.status, Status::kFail);
  EXPECT_NE(r.detail.find("Z4 corrupted"), std::string::npos);
  EXPECT_EQ(check_integrity({z4}).status, Status::kPass);
}

TEST(Checks, UnknownIdIsRejected) {
  Workspace ws;
  EXPECT_THROW(run_check("T19", ws), ParameterError);
  EXPECT_THROW(run_check("t1", ws), ParameterError);
}

TEST(Checks, QuickChecksPass) {
  Workspace ws(Options{24, {1000, std::uint64_t{1} << 18}});
  for (const auto* id : {"T3", "T10", "T11", "T14"}) {
    const auto r = run_check(id, ws);
    EXPECT_EQ(r.status, Status::kPass) << id << ": " << r.detail;
  }
  const auto t10 = run_check("T10", ws);
  EXPECT_NE(t10.detail.find("bijection"), std::string::npos);
}

TEST(Checks, S6IsSkippedUnderALowCap) {
  Workspace ws(Options{8, {512, std::uint64_t{1} << 18}});
  const auto r = run_check("T13", ws);
  EXPECT_NE(r.detail.find("skipped: S6"), std::string::npos);
}

TEST(Figures, DihedralModelsMatch) {
  for (std::uint64_t n : {3u, 4u, 5u, 6u, 7u, 8u, 9u, 10u}) {
    const auto g = build_group(GroupSpec::dihedral(n));
    const auto orbits = automorphism_orbits(g);
    const auto diff = vd::compare_figure(g, orbits, compress(g), vd::dihedral_labeler(n), vd::dihedral_figure(n));
    EXPECT_TRUE(diff.ok()) << n << ": " << vd::describe(diff);
  }
}

TEST(Figures, DicyclicTrueArcs) {
  // a -> a^j extends to an endomorphism only if some y inverts a^j with
  // y^2 = a^(jn): j odd (y = x), or a^j central (y = e).  So among the
  // rotation classes, [a^d] -> [a^k] needs k/d odd or a^k = a^n.
  const std::uint64_t n = 6;
  const auto g = build_group(GroupSpec::dicyclic(n));
  const auto orbits = automorphism_orbits(g);
  auto fig = vd::dicyclic_figure(n);
  std::set<vd::ArcLabel> arcs;
  for (const auto& [from, to] : fig.arcs) {
    auto exponent = [](const std::string& s) -> std::uint64_t {
      if (s == "a") return 1;
      return std::stoull(s.substr(2));
    };
    if (from != "x" && to != "x" && (exponent(to) / exponent(from)) % 2 == 0 && exponent(to) != n) continue;
    arcs.insert({from, to});
  }
  fig.arcs = arcs;
  const auto diff = vd::compare_figure(g, orbits, compress(g), vd::dicyclic_labeler(n), fig);
  EXPECT_TRUE(diff.ok()) << vd::describe(diff);
}

TEST(Figures, SymmetricFourTrueArcs) {
  const auto pg = build_permutation_group(4, false);
  const auto g = pg.group;
  auto label = [&](Element x) { return vd::cycle_type_label(pg.cycle_type(x)); };
  const vd::Figure truth{{"(2)", "(2^2)", "(3)", "(4)"}, {{"(4)", "(2)"}, {"(4)", "(2^2)"}, {"(2)", "(2^2)"}}};
  const auto diff = vd::compare_figure(g, automorphism_orbits(g), compress(g), label, truth);
  EXPECT_TRUE(diff.ok()) << vd::describe(diff);
}

TEST(Figures, CycleTypeLabels) {
  EXPECT_EQ(vd::cycle_type_label({4, 2}), "(4)(2)");
  EXPECT_EQ(vd::cycle_type_label({2, 2, 2}), "(2^3)");
  EXPECT_EQ(vd::cycle_type_label({}), "e");
}

TEST(Helpers, ShapePredicates) {
  EXPECT_TRUE(vd::is_elementary_abelian(build_group("abelian:3,3")));
  EXPECT_TRUE(vd::is_elementary_abelian(build_group("cyclic:1")));
  EXPECT_FALSE(vd::is_elementary_abelian(build_group("cyclic:4")));
  EXPECT_TRUE(vd::has_complete_shape(build_group("abelian:4,8")));
  EXPECT_TRUE(vd::has_complete_shape(build_group("cyclic:9")));
  EXPECT_FALSE(vd::has_complete_shape(build_group("abelian:2,8")));
  EXPECT_FALSE(vd::has_complete_shape(build_group("cyclic:6")));
}
