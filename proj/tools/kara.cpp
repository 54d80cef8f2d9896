// kara: visualise answer sets, edit visualisations and abduce interpretations.
//
// Exit codes: 0 ok, 1 abduction unsatisfiable, 2 parse error, 3 solving
// failed, 4 strict validation failed, 5 file error, 6 layout failed,
// 7 anything else.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "kara/abduction.hpp"
#include "kara/config.hpp"
#include "kara/edit.hpp"
#include "kara/parser.hpp"
#include "kara/pipeline.hpp"
#include "kara/scene_json.hpp"
#include "kara/server.hpp"

namespace {

using namespace kara;

enum Exit { Ok = 0, Unsat = 1, ParseFailed = 2, SolveFailed = 3, StrictFailed = 4, IoFailed = 5, LayoutFailed = 6, Other = 7 };

class IoError : public Error {
 public:
  using Error::Error;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// "-" or empty writes to stdout.
void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw IoError("cannot write " + path);
}

Program read_program(const std::string& path) { return parse_program(read_text(path)); }
Interpretation read_facts(const std::string& path) { return parse_interpretation(read_text(path)); }

// Solver and pipeline flags shared by the subcommands.
struct Common {
  std::string config_path;
  std::string backend;
  std::string solver_path;
  double timeout = 0;
  int depth = 0;
  std::uint64_t seed = 0;

  void add_to(CLI::App* app, bool with_seed) {
    app->add_option("--config", config_path, "key = value config file");
    app->add_option("--backend", backend, "builtin or external")->check(CLI::IsMember({"builtin", "external"}));
    app->add_option("--solver", solver_path, "external solver executable");
    app->add_option("--timeout", timeout, "external solver timeout in seconds")->check(CLI::PositiveNumber);
    app->add_option("--depth", depth, "function nesting depth bound")->check(CLI::PositiveNumber);
    if (with_seed) app->add_option("--seed", seed, "layout seed");
  }

  Config config() const {
    Config c;
    if (!config_path.empty()) c = parse_config(read_text(config_path));
    if (backend == "builtin") c.solver.backend = Backend::Builtin;
    if (backend == "external") c.solver.backend = Backend::External;
    if (!solver_path.empty()) c.solver.executable = solver_path;
    if (timeout > 0) c.solver.timeout_seconds = timeout;
    if (depth > 0) c.depth_bound = depth;
    c.solver.validate();
    return c;
  }

  PipelineOptions pipeline() const {
    auto p = pipeline_options(config());
    p.seed = seed;
    return p;
  }
};

void report(const std::vector<Diagnostic>& diagnostics) {
  for (const auto& d : diagnostics) std::cerr << "kara: warning: " << d.str() << "\n";
}

void emit_scene(const std::string& path, const Rendering& r) {
  if (!path.empty()) write_text(path, scene_to_json(r.scene, &r.layout).dump(2) + "\n");
}

int run_vis(const Common& common, const std::string& program, const std::string& facts, const std::string& out,
            const std::string& scene_path, const std::string& vis_path, bool strict) {
  auto options = common.pipeline();
  options.strict = strict;
  auto v = visualize(read_program(program), facts.empty() ? Interpretation{} : read_facts(facts), options);
  report(v.diagnostics);
  if (v.answer_sets > 1) std::cerr << "kara: note: several answer sets; visualising the first\n";
  write_text(out, v.rendering.svg);
  emit_scene(scene_path, v.rendering);
  if (!vis_path.empty()) write_text(vis_path, v.vis.to_facts());
  return Ok;
}

int run_generic(const Common& common, const std::string& facts, const std::string& out, const std::string& scene_path) {
  auto r = generic(read_facts(facts), common.pipeline());
  write_text(out, r.svg);
  emit_scene(scene_path, r);
  return Ok;
}

int run_render(const Common& common, const std::string& vis, const std::string& out, const std::string& scene_path,
               bool strict) {
  auto options = common.pipeline();
  options.strict = strict;
  auto atoms = read_facts(vis);
  report(validate(atoms));
  auto r = render_vis(project_vis(atoms), options);
  write_text(out, r.svg);
  emit_scene(scene_path, r);
  return Ok;
}

struct AbduceFlags {
  std::string edited, program, out, emit_program, prefer, pi, abducibles;
  std::vector<std::string> domain_terms;
  bool all = false;
  bool verify = false;
};

int run_abduce(const Common& common, const AbduceFlags& f) {
  auto config = common.config();
  auto edited = read_facts(f.edited);
  auto program = read_program(f.program);

  AbductionOptions options;
  options.solver = config.solver;
  options.all = f.all;
  auto sets = default_predicate_sets(program);
  if (config.integrity) sets.integrity = *config.integrity;
  if (!f.pi.empty()) sets.integrity = parse_predicate_list(f.pi);
  if (!f.abducibles.empty()) sets.abducibles = parse_predicate_list(f.abducibles);
  options.sets = sets;
  for (const auto& t : f.domain_terms) options.domain.extra_terms.insert(parse_term(t));
  Interpretation prefer;
  if (!f.prefer.empty()) {
    prefer = read_facts(f.prefer);
    options.prefer = &prefer;
  }

  if (!f.emit_program.empty())
    write_text(f.emit_program, build_abduction_program(edited, program, sets, options.domain, options.check).str());

  auto result = abduce(edited, program, options);
  if (result.unsat()) {
    std::cerr << "kara: UNSATISFIABLE: no interpretation over the abducibles reproduces the edited visualisation\n";
    return Unsat;
  }
  std::string text;
  if (f.all) {
    for (std::size_t i = 0; i < result.alternatives.size(); ++i)
      text += "% interpretation " + std::to_string(i + 1) + "\n" + result.alternatives[i].to_facts();
  } else {
    text = result.interpretation->to_facts();
  }
  write_text(f.out, text);
  if (f.verify && !verify_roundtrip(*result.interpretation, program, edited, result.sets.integrity, options.solver)) {
    std::cerr << "kara: round trip check failed\n";
    return Other;
  }
  return Ok;
}

int run_solve(const Common& common, const std::string& program, const std::string& facts, std::size_t limit) {
  auto config = common.config();
  SolveOptions options;
  options.limit = limit;
  options.ground.max_term_depth = config.depth_bound;
  auto models = solve_with(config.solver, read_program(program), facts.empty() ? Interpretation{} : read_facts(facts), options);
  if (models.empty()) {
    std::cout << "UNSATISFIABLE\n";
    return Unsat;
  }
  for (std::size_t i = 0; i < models.size(); ++i) std::cout << "Answer: " << i + 1 << "\n" << models[i].str() << "\n";
  std::cout << "SATISFIABLE\n";
  return Ok;
}

int run_edit(const std::string& vis, const std::string& edits_path, const std::string& out) {
  auto current = read_facts(vis);
  auto json = nlohmann::json::parse(read_text(edits_path), nullptr, false);
  if (json.is_discarded()) throw EditError(EditError::Kind::Invalid, edits_path + " is not JSON");
  if (!json.is_array()) json = nlohmann::json::array({json});
  for (const auto& item : json) current = apply_edit(current, edit_from_json(item));
  write_text(out, current.to_facts());
  return Ok;
}

int run_serve(const Common& common, const std::string& host, int port, const std::string& corpus) {
  ServiceOptions options;
  options.config = common.config();
  options.corpus_dir = corpus;
  std::cerr << "kara: serving on http://" << host << ":" << port << "\n";
  if (!serve(options, host, port)) throw IoError("cannot listen on " + host + ":" + std::to_string(port));
  return Ok;
}

int fail(int code, const std::string& message) {
  std::cerr << "kara: error: " << message << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Visualise answer sets and abduce interpretations from edited visualisations"};
  app.require_subcommand(1);
  Common common;

  std::string program, facts, out, scene_path, vis_path;
  bool strict = false;

  auto* vis = app.add_subcommand("vis", "Solve V with the facts and render the visualisation as SVG");
  vis->add_option("program", program, "visualisation program")->required();
  vis->add_option("facts", facts, "interpretation to visualise");
  vis->add_option("-o,--output", out, "SVG output (default stdout)");
  vis->add_option("--emit-scene", scene_path, "write the scene JSON");
  vis->add_option("--emit-vis", vis_path, "write the visualisation atoms as facts");
  vis->add_flag("--strict", strict, "fail on validation diagnostics");
  common.add_to(vis, true);

  auto* gen = app.add_subcommand("generic", "Render any interpretation as a hypergraph");
  gen->add_option("facts", facts, "interpretation")->required();
  gen->add_option("-o,--output", out, "SVG output (default stdout)");
  gen->add_option("--emit-scene", scene_path, "write the scene JSON");
  common.add_to(gen, true);

  auto* rend = app.add_subcommand("render", "Render visualisation atoms given as facts");
  rend->add_option("vis", facts, "visualisation atoms")->required();
  rend->add_option("-o,--output", out, "SVG output (default stdout)");
  rend->add_option("--emit-scene", scene_path, "write the scene JSON");
  rend->add_flag("--strict", strict, "fail on validation diagnostics");
  common.add_to(rend, true);

  AbduceFlags ab;
  auto* abd = app.add_subcommand("abduce", "Find an interpretation whose visualisation is the edited one");
  abd->add_option("edited", ab.edited, "edited visualisation atoms")->required();
  abd->add_option("program", ab.program, "visualisation program")->required();
  abd->add_option("-o,--output", ab.out, "facts output (default stdout)");
  abd->add_option("--emit-abduction-program", ab.emit_program, "write the abduction program ('-' for stdout)");
  abd->add_flag("--all", ab.all, "print every solution");
  abd->add_option("--pi", ab.pi, "integrity predicates, e.g. visrect/3,visfillgrid/4");
  abd->add_option("--abducible", ab.abducibles, "abducible predicates, e.g. wall/2,empty/2");
  abd->add_option("--domain-term", ab.domain_terms, "extra domain term (repeatable)");
  abd->add_option("--prefer", ab.prefer, "interpretation whose atoms are tried first");
  abd->add_flag("--verify", ab.verify, "check the round trip of the result");
  common.add_to(abd, false);

  std::size_t limit = 1;
  auto* sol = app.add_subcommand("solve", "Print answer sets");
  sol->add_option("program", program, "program")->required();
  sol->add_option("facts", facts, "input facts");
  sol->add_option("-n,--models", limit, "maximum number of answer sets (0: all)");
  common.add_to(sol, false);

  std::string edits;
  auto* ed = app.add_subcommand("edit", "Apply JSON edit operations to visualisation atoms");
  ed->add_option("vis", facts, "visualisation atoms")->required();
  ed->add_option("edits", edits, "edit operation or array of them")->required();
  ed->add_option("-o,--output", out, "facts output (default stdout)");

  std::string host = "127.0.0.1", corpus;
  int port = 8080;
  auto* srv = app.add_subcommand("serve", "Run the HTTP service");
  srv->add_option("--host", host, "address to bind");
  srv->add_option("--port", port, "port")->check(CLI::Range(1, 65535));
  srv->add_option("--corpus", corpus, "directory of examples offered to the editor");
  common.add_to(srv, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*vis) return run_vis(common, program, facts, out, scene_path, vis_path, strict);
    if (*gen) return run_generic(common, facts, out, scene_path);
    if (*rend) return run_render(common, facts, out, scene_path, strict);
    if (*abd) return run_abduce(common, ab);
    if (*sol) return run_solve(common, program, facts, limit);
    if (*ed) return run_edit(facts, edits, out);
    if (*srv) return run_serve(common, host, port, corpus);
  } catch (const IoError& e) {
    return fail(IoFailed, e.what());
  } catch (const ParseError& e) {
    return fail(ParseFailed, e.what());
  } catch (const InconsistentError& e) {
    return fail(ParseFailed, e.what());
  } catch (const VisValidationError& e) {
    for (const auto& d : e.diagnostics()) std::cerr << "kara: " << d.str() << "\n";
    return fail(StrictFailed, e.what());
  } catch (const LayoutError& e) {
    return fail(LayoutFailed, e.what());
  } catch (const NoAnswerSetError& e) {
    return fail(SolveFailed, e.what());
  } catch (const GroundingError& e) {
    return fail(SolveFailed, e.what());
  } catch (const BackendError& e) {
    return fail(SolveFailed, e.what());
  } catch (const UnsupportedProgramError& e) {
    return fail(SolveFailed, e.what());
  } catch (const std::exception& e) {
    return fail(Other, e.what());
  }
  return Other;
}
