#include <gtest/gtest.h>

#include <random>

#include "kara/layout.hpp"
#include "kara/parser.hpp"
#include "support/pipeline.hpp"

using namespace kara;
using kara::test::corpus_vis;

namespace {

Scene scene_of(const std::string& facts) { return build_scene(parse_interpretation(facts)); }

const Coord& at(const LayoutResult& l, const char* id) { return l.coords.at(parse_term(id)); }

// Checks every relative constraint as a strict inequality.
void expect_constraints_hold(const Scene& s, const LayoutResult& l) {
  for (const auto& c : s.relative_constraints) {
    const Coord& a = l.coords.at(c.a);
    const Coord& b = l.coords.at(c.b);
    switch (c.relation) {
      case Relation::Left: EXPECT_LT(a.x, b.x) << c.a.str() << " left of " << c.b.str(); break;
      case Relation::Right: EXPECT_GT(a.x, b.x) << c.a.str() << " right of " << c.b.str(); break;
      case Relation::Above: EXPECT_LT(a.y, b.y) << c.a.str() << " above " << c.b.str(); break;
      case Relation::Below: EXPECT_GT(a.y, b.y) << c.a.str() << " below " << c.b.str(); break;
      case Relation::InFrontOf: EXPECT_GT(a.z, b.z) << c.a.str() << " in front of " << c.b.str(); break;
    }
  }
}

}  // namespace

TEST(Layout, RelativeExampleOrdersByLabelNumber) {
  auto scene = build_scene(corpus_vis("relative"));
  ASSERT_EQ(scene.relative_constraints.size(), 3u);
  for (std::uint64_t seed : {0u, 1u, 2u, 99u}) {
    auto l = layout(scene, seed);
    EXPECT_LT(at(l, "a").x, at(l, "c").x);
    EXPECT_LT(at(l, "c").x, at(l, "b").x);
    expect_constraints_hold(scene, l);
    // Labels sit centred on their hosts.
    auto host = at(l, "a");
    auto label = at(l, "laba");
    EXPECT_NEAR(label.x + l.sizes.at(parse_term("laba")).width / 2, host.x + 25, 1e-9);
  }
}

TEST(Layout, CycleIsRejectedWithMembers) {
  auto s = scene_of("visrect(a,1,1). visrect(b,1,1). visrect(c,1,1). visrect(d,1,1)."
                    "visleft(a,b). visleft(b,c). visleft(c,a). visleft(c,d).");
  try {
    layout(s, 0);
    FAIL() << "expected a cycle";
  } catch (const LayoutError& e) {
    EXPECT_EQ(e.kind(), LayoutError::Kind::Cycle);
    std::vector<Term> expected{parse_term("a"), parse_term("b"), parse_term("c")};
    EXPECT_EQ(e.members(), expected);
    EXPECT_NE(std::string(e.what()).find("a, b, c"), std::string::npos);
  }
  auto self = scene_of("visrect(a,1,1). visabove(a,a).");
  EXPECT_THROW(layout(self, 0), LayoutError);
  // Opposite relations on the same pair are a cycle too.
  EXPECT_THROW(layout(scene_of("visrect(a,1,1). visrect(b,1,1). visleft(a,b). visright(a,b)."), 0), LayoutError);
}

TEST(Layout, ConflictingFixedPositionsAreUnsatisfiable) {
  auto s = scene_of("visrect(a,1,1). visrect(b,1,1). visposition(a,100,0,0). visposition(b,50,0,0). visleft(a,b).");
  try {
    layout(s, 0);
    FAIL() << "expected unsat";
  } catch (const LayoutError& e) {
    EXPECT_EQ(e.kind(), LayoutError::Kind::Unsatisfiable);
    EXPECT_EQ(e.members(), (std::vector<Term>{parse_term("a"), parse_term("b")}));
  }
  // No room between two fixed elements for a movable one.
  auto squeezed = scene_of("visrect(a,10,10). visrect(b,10,10). visrect(m,10,30)."
                           "visposition(a,0,0,0). visposition(b,30,0,0). visleft(a,m). visleft(m,b).");
  EXPECT_THROW(layout(squeezed, 0), LayoutError);
}

TEST(Layout, FixedPositionsAreKept) {
  auto scene = build_scene(corpus_vis("shelves"));
  auto l = layout(scene, 5);
  for (const auto& [id, p] : scene.positions) {
    EXPECT_EQ(l.coords.at(id), (Coord{static_cast<double>(p.x), static_cast<double>(p.y), p.z})) << id.str();
  }
  EXPECT_EQ(at(l, "shelf1"), (Coord{10, 40, 0}));
  EXPECT_TRUE(l.diagnostics.empty());
  EXPECT_EQ(l.width, 800);
  EXPECT_EQ(l.height, 600);
}

TEST(Layout, SameSeedSameResult) {
  for (const char* name : {"shelves", "maze", "relative", "graph"}) {
    auto scene = build_scene(corpus_vis(name));
    EXPECT_EQ(layout(scene, 42), layout(scene, 42)) << name;
  }
  auto single = scene_of("visrect(a,10,10).");
  auto first = layout(single, 3);
  EXPECT_EQ(first, layout(single, 3));
  EXPECT_NE(first.coords.at(parse_term("a")), layout(single, 4).coords.at(parse_term("a")));
}

TEST(Layout, MazeCellsAreCentredInTwentyPixelCells) {
  auto scene = build_scene(corpus_vis("maze"));
  auto l = layout(scene, 0);
  EXPECT_EQ(at(l, "maze"), (Coord{0, 0, 0}));
  ASSERT_EQ(l.cells.size(), 25u);
  for (const auto& c : l.cells) {
    double ox = 5 + 20.0 * static_cast<double>(c.fill.col - 1);
    double oy = 5 + 20.0 * static_cast<double>(c.fill.row - 1);
    EXPECT_NEAR(c.x + c.width / 2, ox + 10, 1e-9);
    EXPECT_NEAR(c.y + c.height / 2, oy + 10, 1e-9);
    EXPECT_GE(c.x, ox);
    EXPECT_LE(c.x + c.width, ox + 20);
    EXPECT_GE(c.y, oy);
    EXPECT_LE(c.y + c.height, oy + 20);
    if (c.fill.element == parse_term("entrance")) EXPECT_EQ(c.width, 18);
  }
  // Templates are drawn only in cells.
  EXPECT_FALSE(l.coords.contains(parse_term("wall")));
}

TEST(Layout, GraphNodesStayOnCanvasAndApart) {
  auto scene = build_scene(corpus_vis("graph"));
  auto l = layout(scene, 1);
  std::vector<Coord> nodes;
  for (const auto& [node, graph] : scene.graph_membership) {
    const Coord& c = l.coords.at(node);
    EXPECT_GE(c.x, 0);
    EXPECT_GE(c.y, 0);
    EXPECT_LE(c.x + 20, 800);
    EXPECT_LE(c.y + 20, 600);
    nodes.push_back(c);
  }
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j)
      EXPECT_GT(std::hypot(nodes[i].x - nodes[j].x, nodes[i].y - nodes[j].y), 20.0);
  EXPECT_TRUE(l.diagnostics.empty()) << l.diagnostics.front();
}

TEST(Layout, OverflowYieldsDiagnosticOnly) {
  auto s = scene_of("visrect(big,10,900). visposition(big,0,0,0).");
  auto l = layout(s, 0);
  ASSERT_EQ(l.diagnostics.size(), 1u);
  EXPECT_EQ(l.width, 900);
  EXPECT_EQ(at(l, "big"), (Coord{0, 0, 0}));
}

TEST(Layout, RandomAcyclicConstraintsHold) {
  std::mt19937 rng(3);
  int solved = 0;
  for (int round = 0; round < 200; ++round) {
    std::string facts;
    int n = 2 + static_cast<int>(rng() % 6);
    for (int i = 0; i < n; ++i) {
      facts += "visrect(e" + std::to_string(i) + "," + std::to_string(5 + rng() % 30) + "," +
               std::to_string(5 + rng() % 30) + ").";
      if (rng() % 4 == 0)
        facts += "visposition(e" + std::to_string(i) + "," + std::to_string(rng() % 700) + "," +
                 std::to_string(rng() % 500) + "," + std::to_string(rng() % 3) + ").";
    }
    static const char* rels[] = {"visleft", "visright", "visabove", "visbelow", "visinfrontof"};
    for (int k = 0; k < n; ++k) {
      int a = static_cast<int>(rng() % n), b = static_cast<int>(rng() % n);
      if (a == b) continue;
      // Edges always point from lower to higher index: acyclic per axis.
      int rel = static_cast<int>(rng() % 5);
      int lo = std::min(a, b), hi = std::max(a, b);
      bool reversed = rel == 1 || rel == 3 || rel == 4;
      int first = reversed ? hi : lo, second = reversed ? lo : hi;
      facts += std::string(rels[rel]) + "(e" + std::to_string(first) + ",e" + std::to_string(second) + ").";
    }
    auto s = scene_of(facts);
    try {
      auto l = layout(s, static_cast<std::uint64_t>(round));
      ++solved;
      expect_constraints_hold(s, l);
      for (const auto& [id, p] : s.positions)
        EXPECT_EQ(l.coords.at(id), (Coord{static_cast<double>(p.x), static_cast<double>(p.y), p.z}));
    } catch (const LayoutError& e) {
      EXPECT_EQ(e.kind(), LayoutError::Kind::Unsatisfiable) << facts;
    }
  }
  EXPECT_GT(solved, 100);
}
