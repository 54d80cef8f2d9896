#include <sstream>

#include "kara/backends.hpp"
#include "kara/parser.hpp"

namespace kara {
namespace {

std::string excerpt(std::string_view output) {
  constexpr std::size_t kMax = 400;
  std::string out(output.substr(0, kMax));
  if (output.size() > kMax) out += "...";
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

std::vector<Interpretation> parse_solver_output(std::string_view output, std::size_t limit) {
  std::vector<std::string_view> lines;
  for (std::size_t start = 0; start <= output.size();) {
    auto end = output.find('\n', start);
    if (end == std::string_view::npos) end = output.size();
    lines.push_back(trim(output.substr(start, end - start)));
    start = end + 1;
  }

  std::vector<Interpretation> models;
  bool clasp = false, dlv = false, unsat = false, dlv_banner = false;
  try {
    for (std::size_t i = 0; i < lines.size(); ++i) {
      auto line = lines[i];
      if (line.starts_with("Answer:")) {
        clasp = true;
        std::string_view witness = i + 1 < lines.size() ? lines[i + 1] : std::string_view{};
        models.push_back(parse_interpretation(witness, InterpretationFormat::ClaspLine));
        ++i;
      } else if (line.starts_with("{") && line.ends_with("}")) {
        dlv = true;
        models.push_back(parse_interpretation(line, InterpretationFormat::DlvBraces));
      } else if (line == "UNSATISFIABLE") {
        unsat = true;
      } else if (line.starts_with("DLV ")) {
        dlv_banner = true;
      }
    }
  } catch (const Error& e) {
    throw BackendError(BackendError::Kind::Output,
                       std::string("unparseable solver output (") + e.what() + "): " + excerpt(output));
  }
  if (!clasp && !dlv && !unsat && !dlv_banner)
    throw BackendError(BackendError::Kind::Output, "unrecognised solver output: " + excerpt(output));
  if (limit != 0 && models.size() > limit) models.resize(limit);
  return models;
}

}  // namespace kara
