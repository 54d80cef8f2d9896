#include "kara/pipeline.hpp"

#include "kara/svg.hpp"

namespace kara {

PipelineOptions pipeline_options(const Config& config) {
  PipelineOptions out;
  out.solver = config.solver;
  out.depth_bound = config.depth_bound;
  return out;
}

Rendering render(const Scene& scene, const PipelineOptions& options) {
  Rendering out;
  out.scene = scene;
  out.layout = layout(scene, options.seed, options.layout);
  out.svg = render_svg(scene, out.layout);
  return out;
}

Rendering render_vis(const Interpretation& vis, const PipelineOptions& options) {
  return render(build_scene(vis, options.strict), options);
}

Visualization visualize(const Program& v, const Interpretation& input, const PipelineOptions& options) {
  SolveOptions solve;
  solve.limit = 2;
  solve.ground.max_term_depth = options.depth_bound;
  auto models = solve_with(options.solver, v, input, solve);
  if (models.empty()) throw NoAnswerSetError("the visualisation program has no answer set for this interpretation");

  Visualization out;
  out.answer_sets = models.size();
  out.answer_set = std::move(models.front());
  out.diagnostics = validate(out.answer_set);
  if (options.strict && !out.diagnostics.empty()) throw VisValidationError(out.diagnostics);
  out.vis = project_vis(out.answer_set);
  out.rendering = render(build_scene(out.vis), options);
  return out;
}

Rendering generic(const Interpretation& interpretation, const PipelineOptions& options) {
  return render(generic_scene(interpretation), options);
}

}  // namespace kara
