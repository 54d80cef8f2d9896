#include "kara/backends.hpp"

namespace kara {

void SolverConfig::validate() const {
  if (!(timeout_seconds > 0)) throw ConfigError("solver timeout must be positive");
  if (backend == Backend::External && executable.empty() && !std::getenv("KARA_SOLVER"))
    throw ConfigError("external backend requires a solver path");
}

std::vector<Interpretation> solve_with(const SolverConfig& config, const Program& program,
                                       const Interpretation& input, SolveOptions options) {
  config.validate();
  if (config.backend == Backend::Builtin) {
    if (config.answer_set_limit != 0 && (options.limit == 0 || options.limit > config.answer_set_limit))
      options.limit = config.answer_set_limit;
    return solve(program, input, options);
  }
  Program full = input.as_program();
  full.append(program);
  auto models = run_external(full, config);
  if (options.limit != 0 && models.size() > options.limit) models.resize(options.limit);
  return models;
}

}  // namespace kara
