#include <gtest/gtest.h>

#include <random>

#include "kara/edit.hpp"
#include "kara/parser.hpp"
#include "support/pipeline.hpp"

using namespace kara;
using kara::test::corpus_vis;

namespace {

Interpretation I(const std::string& facts) { return parse_interpretation(facts); }
Term T(const char* text) { return parse_term(text); }

// (removed, added) atoms between two interpretations.
std::pair<std::set<Atom>, std::set<Atom>> diff(const Interpretation& before, const Interpretation& after) {
  std::set<Atom> removed, added;
  for (const auto& a : before)
    if (!after.contains(a)) removed.insert(a);
  for (const auto& a : after)
    if (!before.contains(a)) added.insert(a);
  return {removed, added};
}

EditError::Kind error_kind(const Interpretation& vis, const EditOp& op) {
  try {
    apply_edit(vis, op);
  } catch (const EditError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "edit " << edit_name(op) << " succeeded";
  return EditError::Kind::Invalid;
}

}  // namespace

TEST(Edit, MazeGridValueReplacesOneFill) {
  auto vis = corpus_vis("maze");
  auto before = vis;
  auto edited = apply_edit(vis, SetGridValue{T("maze"), 2, 3, T("empty")});
  EXPECT_EQ(vis, before);
  auto [removed, added] = diff(vis, edited);
  EXPECT_EQ(removed, (std::set<Atom>{parse_atom("visfillgrid(maze,wall,2,3)")}));
  EXPECT_EQ(added, (std::set<Atom>{parse_atom("visfillgrid(maze,empty,2,3)")}));
}

TEST(Edit, GridValueErrors) {
  auto vis = corpus_vis("maze");
  EXPECT_EQ(error_kind(vis, SetGridValue{T("maze"), 2, 3, T("lava")}), EditError::Kind::Affordance);
  EXPECT_EQ(error_kind(vis, SetGridValue{T("maze"), 6, 1, T("wall")}), EditError::Kind::Invalid);
  EXPECT_EQ(error_kind(vis, SetGridValue{T("castle"), 1, 1, T("wall")}), EditError::Kind::UnknownId);
}

TEST(Edit, DeleteNeedsAffordanceAndCascades) {
  auto vis = I("visrect(a,1,1). visrect(b,1,1). visconnect(c,a,b). viscolor(c,red). vislabel(a,t). vistext(t,x)."
               "visposition(a,1,2,0). visfillgrid(g,a,1,1). visgrid(g,1,1,10,10).");
  EXPECT_EQ(error_kind(vis, DeleteElement{T("a")}), EditError::Kind::Affordance);
  EXPECT_EQ(error_kind(vis, DeleteElement{T("zz")}), EditError::Kind::UnknownId);
  vis.insert(parse_atom("visdeletable(a)"));
  vis.insert(parse_atom("vischangable(a,color)"));
  auto out = apply_edit(vis, DeleteElement{T("a")});
  EXPECT_EQ(out, I("visrect(b,1,1). vistext(t,x). visgrid(g,1,1,10,10). visdeletable(a). vischangable(a,color)."));
}

TEST(Edit, SetPropertyReplacesOneAtom) {
  auto vis = I("visrect(a,1,1). visbackgroundcolor(a,white). vischangable(a,backgroundcolor).");
  auto out = apply_edit(vis, SetProperty{T("a"), "backgroundColor", T("red")});
  auto [removed, added] = diff(vis, out);
  EXPECT_EQ(removed, (std::set<Atom>{parse_atom("visbackgroundcolor(a,white)")}));
  EXPECT_EQ(added, (std::set<Atom>{parse_atom("visbackgroundcolor(a,red)")}));
  EXPECT_EQ(error_kind(vis, SetProperty{T("a"), "color", T("red")}), EditError::Kind::Affordance);
  EXPECT_EQ(error_kind(vis, SetProperty{T("a"), "width", T("3")}), EditError::Kind::Invalid);
  EXPECT_EQ(error_kind(vis, SetProperty{T("b"), "color", T("red")}), EditError::Kind::UnknownId);
}

TEST(Edit, CreateAndConnect) {
  auto vis = I("visrect(a,1,1). viscreatable(n). viscreatable(c).");
  auto created = apply_edit(vis, CreateElement{T("n"), ElementKind::Ellipse, {T("4"), T("5")}});
  EXPECT_TRUE(created.contains(parse_atom("visellipse(n,4,5)")));
  EXPECT_EQ(error_kind(vis, CreateElement{T("m"), ElementKind::Rect, {T("1"), T("1")}}), EditError::Kind::Affordance);
  EXPECT_EQ(error_kind(vis, CreateElement{T("n"), ElementKind::Rect, {T("1")}}), EditError::Kind::Invalid);
  EXPECT_EQ(error_kind(created, CreateElement{T("n"), ElementKind::Rect, {T("1"), T("1")}}), EditError::Kind::Invalid);
  auto poly = apply_edit(vis, CreateElement{T("n"), ElementKind::Polygon, {T("0"), T("0"), T("1"), T("5"), T("5"), T("2")}});
  EXPECT_EQ(poly.count("vispolygon"), 2u);

  auto connected = apply_edit(created, Connect{T("c"), T("a"), T("n")});
  EXPECT_TRUE(connected.contains(parse_atom("visconnect(c,a,n)")));
  EXPECT_EQ(error_kind(created, Connect{T("c"), T("a"), T("nope")}), EditError::Kind::UnknownId);
  EXPECT_EQ(error_kind(connected, Disconnect{T("c")}), EditError::Kind::Affordance);
  connected.insert(parse_atom("visdeletable(c)"));
  EXPECT_FALSE(apply_edit(connected, Disconnect{T("c")}).contains(parse_atom("visconnect(c,a,n)")));
}

TEST(Edit, MoveSetsPosition) {
  auto vis = I("visrect(a,1,1). visposition(a,1,1,0).");
  auto out = apply_edit(vis, MoveElement{T("a"), 30, 40, 2});
  EXPECT_EQ(out, I("visrect(a,1,1). visposition(a,30,40,2)."));
}

namespace {

// A scene where every edit kind is enabled.
Interpretation editable_scene() {
  return I(R"(visrect(a,10,10). visellipse(b,5,5). vistext(t,"hi"). vislabel(a,t).
              visgrid(g,3,3,65,65). visrect(w,20,20). visrect(e,20,20).
              vispossiblegridvalues(g,w). vispossiblegridvalues(g,e).
              visfillgrid(g,w,1,1). visfillgrid(g,e,2,2).
              viscolor(a,black). visbackgroundcolor(b,white). visfontsize(t,12).
              vischangable(a,color). vischangable(b,backgroundcolor). vischangable(t,fontsize).
              visposition(a,0,0,0). visposition(b,50,50,1).
              viscreatable(n). visdeletable(n). viscreatable(c). visdeletable(c).)");
}

EditOp random_edit(std::mt19937& rng) {
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
  auto num = [&](int hi) { return Term::integer(pick(hi)); };
  switch (pick(5)) {
    case 0: return SetGridValue{T("g"), 1 + pick(3), 1 + pick(3), pick(2) ? T("w") : T("e")};
    case 1: {
      static const char* props[][2] = {{"a", "color"}, {"b", "backgroundColor"}, {"t", "fontsize"}};
      auto* p = props[pick(3)];
      return SetProperty{T(p[0]), p[1], pick(2) ? T("red") : num(30)};
    }
    case 2: return MoveElement{pick(2) ? T("a") : T("b"), pick(700), pick(500), pick(3)};
    case 3: return CreateElement{T("n"), ElementKind::Rect, {num(40), num(40)}};
    default: return Connect{T("c"), T("a"), T("b")};
  }
}

}  // namespace

TEST(Edit, InverseRestoresAndOutputStaysInCatalogue) {
  std::mt19937 rng(5);
  int inverted = 0;
  for (int round = 0; round < 500; ++round) {
    auto vis = editable_scene();
    for (int k = 0, steps = static_cast<int>(rng() % 4); k < steps; ++k) {
      try {
        vis = apply_edit(vis, random_edit(rng));
      } catch (const EditError&) {
      }
    }
    auto op = random_edit(rng);
    Interpretation out;
    try {
      out = apply_edit(vis, op);
    } catch (const EditError&) {
      continue;
    }
    for (const auto& a : out) EXPECT_TRUE(is_vis_predicate(a.signature())) << a.str();
    auto inv = inverse_edit(vis, op);
    if (!inv) continue;
    ++inverted;
    EXPECT_EQ(apply_edit(out, *inv), vis) << edit_name(op);
  }
  EXPECT_GT(inverted, 200);
}

TEST(EditJson, RoundTripsEveryOp) {
  std::vector<EditOp> ops{SetGridValue{T("maze"), 2, 3, T("empty")},
                          DeleteElement{T("f(1,s1)")},
                          CreateElement{T("n"), ElementKind::Polygon, {T("0"), T("0"), T("1")}},
                          SetProperty{T("a"), "backgroundColor", T("\"light blue\"")},
                          Connect{T("c"), T("a"), T("b")},
                          Disconnect{T("c")},
                          MoveElement{T("a"), -5, 7, 2}};
  for (const auto& op : ops) {
    auto json = edit_to_json(op);
    EXPECT_EQ(json["op"], edit_name(op));
    EXPECT_EQ(edit_from_json(nlohmann::json::parse(json.dump())), op) << json.dump();
  }
  auto json = edit_to_json(ops[0]);
  EXPECT_EQ(json, nlohmann::json::parse(R"({"op":"setGridValue","grid":"maze","row":2,"col":3,"value":"empty"})"));
}

TEST(EditJson, MalformedInputIsInvalid) {
  for (const char* text : {R"([])", R"({"op":"explode"})", R"({"grid":"g"})",
                           R"({"op":"setGridValue","grid":"g","row":"2","col":3,"value":"w"})",
                           R"({"op":"setGridValue","grid":"g(","row":2,"col":3,"value":"w"})",
                           R"({"op":"createElement","id":"n","kind":"blob","args":[]})",
                           R"({"op":"createElement","id":"n","kind":"rect","args":"1"})",
                           R"({"op":"deleteElement","id":"X"})"}) {
    try {
      edit_from_json(nlohmann::json::parse(text));
      ADD_FAILURE() << text;
    } catch (const EditError& e) {
      EXPECT_EQ(e.kind(), EditError::Kind::Invalid) << text;
    }
  }
}

TEST(EditLog, ApplyAndUndo) {
  EditLog log(corpus_vis("maze"));
  log.apply(SetGridValue{T("maze"), 2, 3, T("empty")});
  log.apply(SetGridValue{T("maze"), 1, 1, T("wall")});
  EXPECT_THROW(log.apply(SetGridValue{T("maze"), 1, 1, T("lava")}), EditError);
  EXPECT_EQ(log.edits().size(), 2u);
  EXPECT_TRUE(log.undo());
  EXPECT_EQ(log.current(), apply_edit(log.base(), SetGridValue{T("maze"), 2, 3, T("empty")}));
  EXPECT_TRUE(log.undo());
  EXPECT_EQ(log.current(), log.base());
  EXPECT_FALSE(log.undo());
}
