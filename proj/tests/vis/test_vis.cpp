#include <gtest/gtest.h>

#include <random>

#include "kara/parser.hpp"
#include "kara/scene.hpp"
#include "kara/scene_json.hpp"
#include "kara/vis.hpp"
#include "support/pipeline.hpp"

using namespace kara;
using kara::test::corpus_facts;
using kara::test::corpus_vis;

namespace {

Interpretation I(const std::string& facts) { return parse_interpretation(facts); }

bool has_code(const std::vector<Diagnostic>& ds, Diagnostic::Code c) {
  for (const auto& d : ds)
    if (d.code == c) return true;
  return false;
}

}  // namespace

TEST(Catalog, HasThirtyOneDistinctPredicates) {
  EXPECT_EQ(vis_catalog().size(), 31u);
  EXPECT_EQ(vis_predicates().size(), 31u);
  EXPECT_TRUE(is_vis_predicate({"visrect", 3}));
  EXPECT_FALSE(is_vis_predicate({"visrect", 2}));
  EXPECT_EQ(find_vis_predicate("visposition", 4)->category, VisCategory::LayoutHint);
}

TEST(Catalog, ProjectKeepsOnlyPositiveCataloguedAtoms) {
  auto in = I("visrect(a,1,2). book(s1,1). visrect(b,1). -visellipse(c,1,1). vistext(t,\"x\").");
  EXPECT_EQ(project_vis(in), I("visrect(a,1,2). vistext(t,\"x\")."));
  EXPECT_TRUE(project_vis({}).empty());
}

TEST(Validate, CorpusScenesAreClean) {
  for (const char* name : {"shelves", "maze", "relative", "graph"}) {
    auto ds = validate(corpus_vis(name));
    EXPECT_TRUE(ds.empty()) << name << ": " << (ds.empty() ? "" : ds.front().str());
  }
}

TEST(Validate, ReportsDanglingReferences) {
  auto ds = validate(I("visrect(a,1,1). vislabel(a,nolabel). visposition(ghost,0,0,0)."));
  ASSERT_EQ(ds.size(), 2u);
  EXPECT_EQ(ds[0].code, Diagnostic::Code::DanglingReference);
  EXPECT_NE(ds[0].message.find("nolabel"), std::string::npos);
  EXPECT_NE(ds[1].message.find("ghost"), std::string::npos);
}

TEST(Validate, CreatableMayNameUndefinedIds) {
  EXPECT_TRUE(validate(I("viscreatable(newthing).")).empty());
}

TEST(Validate, FillOutsideGridIsOutOfBounds) {
  auto vis = corpus_vis("maze");
  vis.insert(parse_atom("visfillgrid(maze,wall,6,1)"));
  auto ds = validate(vis);
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds[0].code, Diagnostic::Code::OutOfBounds);
}

TEST(Validate, ArityKindsAndDuplicates) {
  EXPECT_TRUE(has_code(validate(I("visrect(a,1).")), Diagnostic::Code::WrongArity));
  EXPECT_TRUE(has_code(validate(I("visfoo(a).")), Diagnostic::Code::UnknownPredicate));
  EXPECT_TRUE(has_code(validate(I("visrect(a,1,1). visellipse(a,1,1).")), Diagnostic::Code::KindConflict));
  EXPECT_TRUE(has_code(validate(I("visrect(a,1,1). viscolor(a,red). viscolor(a,blue).")),
                       Diagnostic::Code::DuplicateProperty));
  EXPECT_TRUE(has_code(validate(I("visrect(a,x,1).")), Diagnostic::Code::NonIntegerGeometry));
  EXPECT_TRUE(has_code(validate(I("visline(l,0,0,1,1,0). vistext(t,a). vislabel(l,t).")),
                       Diagnostic::Code::LabelTarget));
  EXPECT_TRUE(has_code(validate(I("visgraph(g). vistext(t,a). visisnode(t,g).")), Diagnostic::Code::NodeKind));
}

TEST(Validate, StrictBuildThrows) {
  EXPECT_THROW(build_scene(I("visrect(a,1,1). vislabel(a,b)."), true), VisValidationError);
  EXPECT_NO_THROW(build_scene(I("visrect(a,1,1). vislabel(a,b)."), false));
}

TEST(Scene, ShelvesElementsMatchFacts) {
  auto facts = corpus_facts("shelves");
  auto scene = build_scene(corpus_vis("shelves"));
  std::size_t rects = 0, ellipses = 0, lines = 0;
  for (const auto& [id, e] : scene.elements) {
    rects += e.kind == ElementKind::Rect;
    ellipses += e.kind == ElementKind::Ellipse;
    lines += e.kind == ElementKind::Line;
  }
  EXPECT_EQ(rects, facts.count("book"));
  EXPECT_EQ(ellipses, facts.count("globe"));
  EXPECT_EQ(lines, 2u);
  // Every item is positioned at 20*Y on the row of its shelf.
  for (const auto& a : facts) {
    Term id = Term::function("f", a.args);
    ASSERT_TRUE(scene.positions.contains(id)) << id.str();
    const auto& p = scene.positions.at(id);
    EXPECT_EQ(p.x, 20 * a.args[1].int_value());
    EXPECT_EQ(p.y, a.args[0].name() == "s1" ? 20 : 60);
  }
  const auto& globe = scene.elements.at(parse_term("f(s2,2)"));
  EXPECT_EQ(std::get<BoxGeom>(globe.geometry), (BoxGeom{20, 20}));
}

TEST(Scene, MazeGridAndFills) {
  auto scene = build_scene(corpus_vis("maze"));
  const auto& grid = scene.elements.at(parse_term("maze"));
  EXPECT_EQ(std::get<GridGeom>(grid.geometry), (GridGeom{5, 5, 105, 105}));
  EXPECT_EQ(scene.grid_fills.size(), 25u);
  EXPECT_EQ(scene.possible_grid_values.at(parse_term("maze")).size(), 4u);
  EXPECT_EQ(scene.grid_templates().size(), 4u);
}

TEST(Scene, FirstDefinitionWinsAndUnknownRefsAreSkipped) {
  auto s = build_scene(I("visrect(a,1,1). viscolor(a,blue). viscolor(a,red). vislabel(a,missing)."));
  EXPECT_EQ(s.elements.at(parse_term("a")).style.color, parse_term("blue"));
  EXPECT_FALSE(s.elements.at(parse_term("a")).label.has_value());
}

TEST(Scene, EmptyInput) {
  auto s = build_scene({});
  EXPECT_TRUE(s.elements.empty());
  EXPECT_TRUE(scene_to_vis(s).empty());
}

namespace {

// Random valid vis interpretation over the whole catalogue.
Interpretation random_vis(std::mt19937& rng) {
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
  auto num = [&](int hi) { return Term::integer(1 + pick(hi)); };
  auto sym = [](const std::string& s) { return Term::symbol(s); };
  Interpretation out;
  auto add = [&](const char* p, std::vector<Term> args) { out.insert(Atom(p, std::move(args))); };

  int n = 1 + pick(8);
  std::vector<Term> shapes, texts, nodes;
  std::vector<Term> ids;
  for (int i = 0; i < n; ++i) {
    Term id = pick(3) == 0 ? Term::function("e", {Term::integer(i)}) : sym("e" + std::to_string(i));
    ids.push_back(id);
    switch (pick(7)) {
      case 0: add("visrect", {id, num(50), num(50)}); shapes.push_back(id); nodes.push_back(id); break;
      case 1: add("visellipse", {id, num(50), num(50)}); shapes.push_back(id); nodes.push_back(id); break;
      case 2:
        for (int k = 1; k <= 3; ++k) add("vispolygon", {id, num(40), num(40), Term::integer(k)});
        shapes.push_back(id);
        break;
      case 3:
        add("visimage", {id, Term::string("img" + std::to_string(i) + ".png")});
        if (pick(2)) add("visscale", {id, num(30), num(30)});
        nodes.push_back(id);
        break;
      case 4: add("visline", {id, num(99), num(99), num(99), num(99), Term::integer(pick(3))}); break;
      case 5: add("vistext", {id, pick(2) ? Term::string("hello \"x\"") : num(9)}); texts.push_back(id); break;
      default: add("visrect", {id, num(9), num(9)}); shapes.push_back(id); break;
    }
    if (pick(3) == 0) add("viscolor", {id, sym(pick(2) ? "red" : "lightblue")});
    if (pick(4) == 0) add("visbackgroundcolor", {id, sym("yellow")});
    if (pick(4) == 0) add("visposition", {id, num(500), num(500), Term::integer(pick(4))});
    if (pick(5) == 0) add("vishide", {id});
    if (pick(4) == 0) add("visdeletable", {id});
    if (pick(5) == 0) add("vischangable", {id, sym("color")});
  }
  for (const auto& t : texts) {
    if (pick(2)) add("visfontfamily", {t, Term::string("serif")});
    if (pick(2)) add("visfontsize", {t, num(20)});
    if (pick(2)) add("visfontstyle", {t, sym(pick(2) ? "bold" : "italic")});
  }
  // Each text labels at most one shape.
  for (std::size_t i = 0; i < texts.size() && i < shapes.size(); ++i)
    if (pick(2)) add("vislabel", {shapes[i], texts[i]});
  if (!nodes.empty() && pick(2)) {
    add("visgraph", {sym("g")});
    for (const auto& v : nodes)
      if (pick(2)) add("visisnode", {v, sym("g")});
    if (nodes.size() >= 2) {
      add("visconnect", {sym("c1"), nodes[0], nodes[1]});
      if (pick(2)) add("vistargetdeco", {sym("c1"), sym("arrow")});
      if (pick(2)) add("vissourcedeco", {sym("c1"), sym("circle")});
    }
  }
  if (!shapes.empty() && pick(2)) {
    add("visgrid", {sym("grid"), Term::integer(3), Term::integer(4), Term::integer(65), Term::integer(85)});
    add("vispossiblegridvalues", {sym("grid"), shapes[0]});
    for (int k = 0; k < 3; ++k) add("visfillgrid", {sym("grid"), shapes[0], num(3), num(4)});
  }
  static const char* rels[] = {"visleft", "visright", "visabove", "visbelow", "visinfrontof"};
  for (int k = 0; k < pick(4); ++k) add(rels[pick(5)], {ids[pick(n)], ids[pick(n)]});
  if (pick(3) == 0) add("viscreatable", {sym("fresh")});
  return out;
}

}  // namespace

TEST(Scene, BuildAndUnbuildAreInverseOnValidInputs) {
  std::mt19937 rng(7);
  for (int round = 0; round < 300; ++round) {
    auto vis = random_vis(rng);
    ASSERT_TRUE(validate(vis).empty()) << vis.to_facts() << validate(vis).front().str();
    auto scene = build_scene(vis, true);
    EXPECT_EQ(scene_to_vis(scene), vis) << vis.to_facts();
    EXPECT_EQ(build_scene(vis), scene);
  }
}

TEST(SceneJson, RoundTripsRandomScenes) {
  std::mt19937 rng(11);
  for (int round = 0; round < 200; ++round) {
    auto scene = build_scene(random_vis(rng));
    auto j = scene_to_json(scene);
    EXPECT_EQ(scene_from_json(nlohmann::json::parse(j.dump())), scene) << j.dump(1);
  }
}

TEST(SceneJson, TopLevelShape) {
  auto j = scene_to_json(build_scene(corpus_vis("graph")));
  for (const char* key : {"elements", "gridFills", "connections", "graphs", "constraints", "positions"})
    EXPECT_TRUE(j.at(key).is_array()) << key;
  EXPECT_TRUE(j.at("possibleGridValues").is_object());
  EXPECT_EQ(j.at("connections").size(), 17u);
  EXPECT_EQ(j.at("graphs").at(0).at("nodes").size(), 6u);
  EXPECT_EQ(j.at("connections").at(0).at("geometry").at("targetDeco"), "arrow");
  EXPECT_FALSE(j.contains("layout"));
}

TEST(SceneJson, RejectsMalformedInput) {
  EXPECT_THROW(scene_from_json(nlohmann::json::array()), Error);
  EXPECT_THROW(scene_from_json(nlohmann::json::parse(R"({"elements":[{"id":"a","kind":"blob"}]})")), Error);
  EXPECT_THROW(scene_from_json(nlohmann::json::parse(R"({"elements":[{"id":"a","kind":"rect","geometry":{}}]})")),
               Error);
}

TEST(Generic, SmallestCase) {
  auto s = generic_scene(I("edge(1,2)."));
  std::size_t nodes = 0, edges = 0;
  for (const auto& [node, graph] : s.graph_membership) {
    if (node.name() == "kara_node") ++nodes;
    if (node.name() == "kara_edge") ++edges;
  }
  EXPECT_EQ(nodes, 2u);
  EXPECT_EQ(edges, 1u);
  const auto& junction = s.elements.at(generic_edge_id(1));
  const auto& label = s.elements.at(*junction.label);
  EXPECT_EQ(std::get<TextGeom>(label.geometry).text, Term::string("edge"));
  EXPECT_EQ(s.connections().size(), 2u);
  std::set<std::string> arg_labels;
  for (const Element* c : s.connections())
    arg_labels.insert(std::get<TextGeom>(s.elements.at(*c->label).geometry).text.str());
  EXPECT_EQ(arg_labels, (std::set<std::string>{"1", "2"}));
  EXPECT_TRUE(generic_scene({}).elements.empty());
}

TEST(Generic, GraphColouringCounts) {
  auto interp = corpus_facts("graph");
  // Independent count of distinct argument terms and literals.
  std::set<std::string> individuals;
  for (const auto& a : interp)
    for (const auto& t : a.args) individuals.insert(t.str());
  ASSERT_EQ(individuals.size(), 9u);
  ASSERT_EQ(interp.size(), 29u);

  auto vis = generic_vis(interp);
  EXPECT_TRUE(validate(vis).empty());
  auto s = build_scene(vis);
  std::size_t nodes = 0, edges = 0;
  std::map<std::string, std::set<Term>> colours;
  for (const auto& [id, e] : s.elements) {
    if (id.name() == "kara_node") {
      ++nodes;
      EXPECT_TRUE(individuals.contains(id.args()[0].str()));
    }
    if (id.name() == "kara_edge") {
      ++edges;
      auto pred = std::get<TextGeom>(s.elements.at(*e.label).geometry).text.text();
      colours[pred].insert(*e.style.background);
    }
  }
  EXPECT_EQ(nodes, individuals.size());
  EXPECT_EQ(edges, interp.size());
  ASSERT_EQ(colours.size(), 3u);
  std::set<Term> distinct;
  for (const auto& [pred, cs] : colours) {
    EXPECT_EQ(cs.size(), 1u) << pred;
    distinct.insert(*cs.begin());
  }
  EXPECT_EQ(distinct.size(), 3u);
  for (const char* c : {"lightblue", "yellow", "red"})
    EXPECT_TRUE(s.elements.contains(generic_node_id(Term::symbol(c))));
}

TEST(Generic, IsDeterministic) {
  auto interp = corpus_facts("graph");
  EXPECT_EQ(generic_scene(interp), generic_scene(interp));
}
