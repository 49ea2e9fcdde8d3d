#include <string>

#include <gtest/gtest.h>

#include "endograph/digraph.hpp"
#include "endograph/errors.hpp"
#include "endograph/export.hpp"
#include "endograph/group.hpp"
#include "endograph/powergraph.hpp"

using namespace endograph;

namespace {

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST(Export, CompressedCyclicTwelveDot) {
  const auto dot = to_dot(to_export(compress(build_group("cyclic:12"))));
  EXPECT_EQ(count(dot, "[label="), 5u);
  EXPECT_EQ(count(dot, " -> "), 7u);
  EXPECT_NE(dot.find("label=\"[1]\", size=4"), std::string::npos);
  EXPECT_NE(dot.find("label=\"[6]\", size=1"), std::string::npos);
  EXPECT_EQ(dot.rfind("digraph \"Z12 compressed\" {", 0), 0u);
}

TEST(Export, EndoDigraphOfZ2Json) {
  const auto g = build_group("cyclic:2");
  const auto json = to_json(to_export(endo_digraph(g), g.label(), "endo"));
  const auto parsed = from_json(json);
  EXPECT_EQ(parsed.labels.size(), 2u);
  EXPECT_EQ(parsed.arcs, (std::vector<Arc>{{1, 0}}));
  EXPECT_EQ(parsed.kind, "endo");
  EXPECT_NE(json.find("\"group\": \"Z2\""), std::string::npos);
}

TEST(Export, JsonRoundTripIsByteIdentical) {
  for (const auto* s : {"cyclic:12", "dihedral:4", "quaternion", "symmetric:4", "abelian:2,4"}) {
    const auto g = build_group(s);
    for (const auto& e : {to_export(endo_digraph(g), g.label(), "endo"), to_export(auto_digraph(g), g.label(), "auto"),
                          to_export(power_digraph(g), g.label(), "power"), to_export(compress(g))}) {
      const auto text = to_json(e);
      const auto back = from_json(text);
      EXPECT_EQ(back, e) << s;
      EXPECT_EQ(to_json(back), text) << s;
      EXPECT_EQ(to_digraph(back), to_digraph(e));
    }
  }
}

TEST(Export, CompressedS4Dot) {
  // True arcs: (4)->(2), (4)->(2^2) and (2)->(2^2) via the sign map.
  const auto c = compress(build_group("symmetric:4"));
  const auto dot = to_dot(to_export(c));
  EXPECT_EQ(count(dot, "[label="), 4u);
  EXPECT_EQ(count(dot, " -> "), 3u);
}

TEST(Export, MalformedJsonIsRejected) {
  EXPECT_THROW(from_json(R"({"group":"g","kind":"endo","vertices":[{"id":1,"label":"a","class_size":1}],"arcs":[]})"),
               ParameterError);
  EXPECT_THROW(from_json(R"({"group":"g","kind":"endo","vertices":[{"id":0,"label":"a","class_size":1}],"arcs":[[0,0]]})"),
               ParameterError);
}
