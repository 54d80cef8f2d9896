#pragma once

#include <cstdint>
#include <vector>

#include "kara/abduction.hpp"
#include "kara/config.hpp"
#include "kara/layout.hpp"
#include "kara/scene.hpp"
#include "kara/vis.hpp"

namespace kara {

/// V ∪ I has no answer set.
class NoAnswerSetError : public Error {
 public:
  using Error::Error;
};

struct PipelineOptions {
  SolverConfig solver;
  int depth_bound = 8;
  std::uint64_t seed = 0;
  /// Validation diagnostics become VisValidationError.
  bool strict = false;
  LayoutOptions layout;
};

PipelineOptions pipeline_options(const Config& config);

struct Rendering {
  Scene scene;
  LayoutResult layout;
  std::string svg;
};

struct Visualization {
  /// The answer set that was visualised (the first one).
  Interpretation answer_set;
  Interpretation vis;
  std::size_t answer_sets = 0;
  std::vector<Diagnostic> diagnostics;
  Rendering rendering;
};

/// Lays out and renders a scene.
Rendering render(const Scene& scene, const PipelineOptions& options);

/// Solves V ∪ I, projects onto the vis predicates, validates and renders the
/// first answer set. Throws NoAnswerSetError when there is none.
Visualization visualize(const Program& v, const Interpretation& input, const PipelineOptions& options);

/// Renders the vis atoms of an interpretation as they are.
Rendering render_vis(const Interpretation& vis, const PipelineOptions& options);

/// Generic hypergraph view of an arbitrary interpretation.
Rendering generic(const Interpretation& interpretation, const PipelineOptions& options);

}  // namespace kara
