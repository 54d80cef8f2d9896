#include <gtest/gtest.h>

#include "kara/grounder.hpp"
#include "kara/parser.hpp"
#include "support/corpus.hpp"

using namespace kara;

namespace {

std::set<std::string> derivable(const Program& g) {
  std::set<std::string> out;
  for (const auto& r : g.rules)
    for (const auto& h : r.head) out.insert(h.str());
  return out;
}

}  // namespace

TEST(Grounder, ShelfPositionsAreInstantiated) {
  auto v = parse_program(
      "visrect(f(X,Y),20,8) :- book(X,Y).\n"
      "visposition(f(s1,Y),20*Y,20,0) :- book(s1,Y).\n"
      "visposition(f(s2,Y),20*Y,60,0) :- book(s2,Y).\n");
  auto i = parse_interpretation("book(s1,1). book(s1,3). book(s2,1).");
  auto heads = derivable(ground(v, i));
  EXPECT_TRUE(heads.contains("visposition(f(s1,1),20,20,0)"));
  EXPECT_TRUE(heads.contains("visposition(f(s1,3),60,20,0)"));
  EXPECT_TRUE(heads.contains("visposition(f(s2,1),20,60,0)"));
  EXPECT_EQ(heads.size(), 3u + 3u + 3u);
}

TEST(Grounder, TransitiveClosureOnChain) {
  // Path pairs over a chain of n nodes: n(n-1)/2.
  auto p = parse_program(
      "edge(1,2). edge(2,3). edge(3,4). edge(4,5). edge(5,6).\n"
      "path(X,Y) :- edge(X,Y).\n"
      "path(X,Z) :- path(X,Y), edge(Y,Z).\n");
  auto heads = derivable(ground(p));
  std::size_t paths = 0;
  for (const auto& h : heads)
    if (h.starts_with("path(")) ++paths;
  EXPECT_EQ(paths, 15u);
}

TEST(Grounder, RecursionThroughBothBodyAtoms) {
  auto p = parse_program(
      "e(1,2). e(2,3). e(3,4).\n"
      "t(X,Y) :- e(X,Y).\n"
      "t(X,Z) :- t(X,Y), t(Y,Z).\n");
  auto heads = derivable(ground(p));
  EXPECT_TRUE(heads.contains("t(1,4)"));
  EXPECT_EQ(heads.size(), 3u + 6u);
}

TEST(Grounder, LinearTermsInBodyAreInverted) {
  auto p = parse_program("q(X) :- p(X*20+5).");
  auto i = parse_interpretation("p(45). p(46). p(a).");
  auto heads = derivable(ground(p, i));
  EXPECT_TRUE(heads.contains("q(2)"));
  EXPECT_FALSE(heads.contains("q(a)"));
  EXPECT_EQ(heads.size(), 4u);
}

TEST(Grounder, MazeGridHeaderFromInvertedBody) {
  auto p = parse_program(
      "visgrid(maze,MAXR,MAXC,MAXR*20+5,MAXC*20+5) :- maxC(MAXC), maxR(MAXR).\n"
      "back(R) :- visgrid(maze,R,_,R*20+5,_).\n");
  auto heads = derivable(ground(p, parse_interpretation("maxC(5). maxR(5).")));
  EXPECT_TRUE(heads.contains("visgrid(maze,5,5,105,105)"));
  EXPECT_TRUE(heads.contains("back(5)"));
}

TEST(Grounder, BuiltinsFilterAndDisappear) {
  auto p = parse_program("n(1..4). lt(X,Y) :- n(X), n(Y), X < Y, X != 2.");
  auto g = ground(p);
  std::size_t lt = 0;
  for (const auto& r : g.rules) {
    EXPECT_TRUE(r.builtins.empty());
    if (r.head[0].predicate == "lt") ++lt;
  }
  EXPECT_EQ(lt, 3u + 1u);
}

TEST(Grounder, UndefinedArithmetic) {
  auto p = parse_program("v(X*20) :- book(X).");
  auto i = parse_interpretation("book(s1). book(2).");
  EXPECT_THROW(ground(p, i), GroundingError);
  GroundOptions opts;
  opts.discard_undefined_arithmetic = true;
  auto heads = derivable(ground(p, i, opts));
  EXPECT_TRUE(heads.contains("v(40)"));
  EXPECT_EQ(heads.size(), 3u);
}

TEST(Grounder, DepthBound) {
  auto p = parse_program("p(a). p(f(X)) :- p(X).");
  try {
    ground(p);
    FAIL();
  } catch (const GroundingError& e) {
    EXPECT_NE(std::string(e.what()).find("f(f(f(f(f(f(f(f(f(a)))))))))"), std::string::npos) << e.what();
  }
  GroundOptions deep;
  deep.max_term_depth = 3;
  EXPECT_THROW(ground(p, {}, deep), GroundingError);
}

TEST(Grounder, AtomCap) {
  auto p = parse_program("n(0). n(X+1) :- n(X).");
  GroundOptions opts;
  opts.max_atoms = 1000;
  EXPECT_THROW(ground(p, {}, opts), GroundingError);
}

TEST(Grounder, NegativeBodyDoesNotRestrictInstances) {
  auto p = parse_program("d(1..3). p(X) :- d(X), not q(X). q(2).");
  auto g = ground(p);
  std::size_t prules = 0;
  for (const auto& r : g.rules)
    if (r.head[0].predicate == "p") ++prules;
  EXPECT_EQ(prules, 3u);
}

TEST(Grounder, DuplicateInstancesCollapse) {
  auto p = parse_program("a(1). a(1). b(X) :- a(X). b(X) :- a(X).");
  EXPECT_EQ(ground(p).rules.size(), 2u);
}

TEST(Grounder, MazeCounts) {
  auto v = parse_program(test::read_corpus("maze/vis.lp"));
  auto i = parse_interpretation(test::read_corpus("maze/facts.lp"));
  auto heads = derivable(ground(v, i));
  std::size_t lines = 0;
  for (const auto& h : heads)
    if (h.starts_with("visline(")) ++lines;
  EXPECT_EQ(lines, 12u);
}
