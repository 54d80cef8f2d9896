#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace kara::test {

inline std::filesystem::path corpus_path(const std::string& rel) {
  return std::filesystem::path(KARA_CORPUS_DIR) / rel;
}

inline std::string read_corpus(const std::string& rel) {
  std::ifstream in(corpus_path(rel));
  if (!in) throw std::runtime_error("missing corpus file " + rel);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace kara::test
