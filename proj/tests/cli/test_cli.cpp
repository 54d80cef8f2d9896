#include <gtest/gtest.h>
#include <sys/wait.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "kara/parser.hpp"
#include "support/corpus.hpp"

namespace fs = std::filesystem;
using kara::test::corpus_path;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("kara_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path file(const std::string& name, const std::string& content) {
    auto p = dir_ / name;
    std::ofstream(p, std::ios::binary) << content;
    return p;
  }
  fs::path path(const std::string& name) const { return dir_ / name; }

  CliRun kara(const std::string& args) {
    auto out = dir_ / "stdout", err = dir_ / "stderr";
    std::string cmd = std::string(KARA_BINARY) + " " + args + " >" + out.string() + " 2>" + err.string();
    int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
  }

  fs::path dir_;
};

std::string corpus(const std::string& rel) { return corpus_path(rel).string(); }

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_F(Cli, ShelvesSvgPrimitives) {
  auto r = kara("vis " + corpus("shelves/vis.lp") + " " + corpus("shelves/facts.lp"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(count(r.out, "<line "), 2u);
  EXPECT_EQ(count(r.out, "<rect "), 3u);
  EXPECT_EQ(count(r.out, "<ellipse "), 1u);
}

TEST_F(Cli, MazeSvgCellsAndSeparators) {
  auto svg = path("maze.svg"), scene = path("scene.json");
  auto r = kara("vis " + corpus("maze/vis.lp") + " " + corpus("maze/facts.lp") + " -o " + svg.string() +
                " --emit-scene " + scene.string());
  ASSERT_EQ(r.code, 0) << r.err;
  auto text = slurp(svg);
  EXPECT_EQ(count(text, "<rect ") + count(text, "<image "), 25u);
  EXPECT_EQ(count(text, "<line "), 12u);
  EXPECT_NE(slurp(scene).find("\"gridFills\""), std::string::npos);
}

TEST_F(Cli, SameSeedSameBytes) {
  for (const char* name : {"shelves", "maze", "relative", "graph"}) {
    std::string args = std::string("vis ") + corpus(std::string(name) + "/vis.lp") + " " +
                       corpus(std::string(name) + "/facts.lp") + " --seed 42";
    auto first = kara(args);
    ASSERT_EQ(first.code, 0) << name << first.err;
    EXPECT_EQ(kara(args).out, first.out) << name;
    EXPECT_EQ(kara(args).out, first.out) << name;
  }
}

TEST_F(Cli, GenericViews) {
  auto single = kara("generic " + file("p.lp", "p(c).").string());
  ASSERT_EQ(single.code, 0) << single.err;
  EXPECT_NE(single.out.find(">p<"), std::string::npos);
  auto empty = kara("generic " + file("empty.lp", "").string());
  ASSERT_EQ(empty.code, 0);
  EXPECT_EQ(count(empty.out, "<svg "), 1u);
  EXPECT_EQ(count(empty.out, "<rect "), 0u);
}

TEST_F(Cli, MazeEditAbductionWorkflow) {
  auto vis = path("vis.lp"), edited = path("edited.lp"), abduced = path("abduced.lp");
  ASSERT_EQ(kara("vis " + corpus("maze/vis.lp") + " " + corpus("maze/facts.lp") + " -o /dev/null --emit-vis " + vis.string()).code, 0);
  auto edit = file("edit.json", R"({"op":"setGridValue","grid":"maze","row":2,"col":3,"value":"empty"})");
  auto e = kara("edit " + vis.string() + " " + edit.string() + " -o " + edited.string());
  ASSERT_EQ(e.code, 0) << e.err;
  auto a = kara("abduce " + edited.string() + " " + corpus("maze/vis.lp") + " --prefer " + corpus("maze/facts.lp") +
                " --verify -o " + abduced.string());
  ASSERT_EQ(a.code, 0) << a.err;

  auto original = kara::parse_interpretation(slurp(corpus_path("maze/facts.lp")));
  auto result = kara::parse_interpretation(slurp(abduced));
  std::set<kara::Atom> removed, added;
  for (const auto& x : original)
    if (!result.contains(x)) removed.insert(x);
  for (const auto& x : result)
    if (!original.contains(x)) added.insert(x);
  EXPECT_EQ(removed, (std::set<kara::Atom>{kara::parse_atom("wall(3,2)")}));
  EXPECT_EQ(added, (std::set<kara::Atom>{kara::parse_atom("empty(3,2)")}));
}

TEST_F(Cli, AbductionProgramHasFourGuessRules) {
  auto vis = path("vis.lp");
  ASSERT_EQ(kara("vis " + corpus("shelves/vis.lp") + " " + corpus("shelves/facts.lp") + " -o /dev/null --emit-vis " + vis.string()).code, 0);
  auto r = kara("abduce " + vis.string() + " " + corpus("shelves/vis.lp") + " --emit-abduction-program - -o /dev/null");
  ASSERT_EQ(r.code, 0) << r.err;
  auto start = r.out.find("% guess\n"), end = r.out.find("% visualisation program\n");
  ASSERT_NE(start, std::string::npos);
  std::istringstream guess(r.out.substr(start + 8, end - start - 8));
  std::vector<std::string> rules;
  for (std::string line; std::getline(guess, line);)
    if (!line.empty()) rules.push_back(line);
  ASSERT_EQ(rules.size(), 4u) << r.out;
  EXPECT_EQ(std::count_if(rules.begin(), rules.end(), [](const std::string& l) { return l.find("book(X1,X2)") != l.npos; }), 2);
  EXPECT_EQ(std::count_if(rules.begin(), rules.end(), [](const std::string& l) { return l.find("globe(X1,X2)") != l.npos; }), 2);
}

TEST_F(Cli, AbductionOverrides) {
  auto all = kara("abduce " + corpus("house/edited.lp") + " " + corpus("house/vis.lp") + " --domain-term sun --all");
  ASSERT_EQ(all.code, 0) << all.err;
  EXPECT_NE(all.out.find("property(sun,size(10,11))."), std::string::npos) << all.out;
  EXPECT_NE(all.out.find("% interpretation 1"), std::string::npos);
  auto pi = kara("abduce " + corpus("house/edited.lp") + " " + corpus("house/vis.lp") + " --pi visrect/3");
  EXPECT_EQ(pi.code, 0) << pi.err;
  EXPECT_NE(pi.out.find("house(bakerstreet,221b)."), std::string::npos) << pi.out;
  EXPECT_EQ(kara("abduce " + corpus("house/edited.lp") + " " + corpus("house/vis.lp") + " --abducible visrect/3").code, 7);
}

TEST_F(Cli, ExitCodes) {
  auto vis = corpus("maze/vis.lp");
  EXPECT_EQ(kara("vis " + path("missing.lp").string()).code, 5);
  EXPECT_EQ(kara("vis " + vis + " " + corpus("maze/facts.lp") + " -o " + path("no/such/dir.svg").string()).code, 5);
  EXPECT_EQ(kara("vis " + file("bad.lp", "visrect(a,").string()).code, 2);
  EXPECT_EQ(kara("vis " + file("none.lp", "a :- not a.").string()).code, 3);
  EXPECT_EQ(kara("vis " + file("arity.lp", "visrect(a,1).").string() + " --strict").code, 4);
  EXPECT_EQ(kara("vis " + file("arity.lp", "visrect(a,1).").string()).code, 0);
  auto cycle = kara("vis " + file("cycle.lp", "visrect(a,1,1). visrect(b,1,1). visleft(a,b). visleft(b,a).").string());
  EXPECT_EQ(cycle.code, 6);
  EXPECT_NE(cycle.err.find("cycle"), std::string::npos) << cycle.err;

  auto shelves_vis = path("vis.lp");
  kara("vis " + corpus("shelves/vis.lp") + " " + corpus("shelves/facts.lp") + " -o /dev/null --emit-vis " + shelves_vis.string());
  auto unsat = kara("abduce " + shelves_vis.string() + " " + vis);
  EXPECT_EQ(unsat.code, 1);
  EXPECT_NE(unsat.err.find("UNSATISFIABLE"), std::string::npos);
  EXPECT_EQ(kara("solve " + file("u.lp", "a :- not a.").string()).code, 1);
  EXPECT_EQ(kara("edit " + shelves_vis.string() + " " + file("e.json", R"({"op":"deleteElement","id":"shelf1"})").string()).code, 7);
  EXPECT_NE(kara("frobnicate").code, 0);
}

TEST_F(Cli, ConfigFileAndFlagPrecedence) {
  auto deep = file("deep.lp", "n(z). n(s(X)) :- n(X), c. c.");
  auto conf = file("kara.conf", "depth_bound = 3\n");
  EXPECT_EQ(kara("solve " + deep.string() + " --config " + conf.string()).code, 3);
  // The flag wins over the file: a larger bound still fails, but later.
  auto flagged = kara("solve " + deep.string() + " --config " + conf.string() + " --depth 5");
  EXPECT_EQ(flagged.code, 3);
  EXPECT_NE(flagged.err.find("s(s(s(s(s(s(z))))))"), std::string::npos) << flagged.err;
  EXPECT_EQ(kara("solve " + deep.string() + " --config " + file("bad.conf", "colour = red").string()).code, 7);
  EXPECT_EQ(kara("solve " + deep.string() + " --config " + path("missing.conf").string()).code, 5);
  auto ok = kara("solve " + file("p.lp", "{a}. b :- a.").string() + " -n 0 --config " + file("b.conf", "solver = builtin").string());
  EXPECT_EQ(ok.code, 2) << "choice rules are not part of the dialect";
}

TEST_F(Cli, SolveEnumerates) {
  auto r = kara("solve " + file("p.lp", "a :- not b. b :- not a.").string() + " -n 0");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "Answer: 1\nb\nAnswer: 2\na\nSATISFIABLE\n");
}
