#include "kara/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace kara {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Strips a trailing comment outside quotes and surrounding quotes.
std::string value_text(std::string_view raw, int line) {
  bool quoted = false;
  std::size_t end = raw.size();
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] == '"') quoted = !quoted;
    if (raw[i] == '#' && !quoted) {
      end = i;
      break;
    }
  }
  auto v = trim(raw.substr(0, end));
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') return std::string(v.substr(1, v.size() - 2));
  if (v.find('"') != std::string_view::npos) throw ConfigError("config line " + std::to_string(line) + ": unbalanced quote");
  return std::string(v);
}

template <class T>
T number(const std::string& v, const std::string& key, int line) {
  T out{};
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw ConfigError("config line " + std::to_string(line) + ": " + key + " expects a number, got '" + v + "'");
  return out;
}

}  // namespace

std::set<Predicate> parse_predicate_list(std::string_view text) {
  std::set<Predicate> out;
  std::string item;
  auto flush = [&] {
    if (item.empty()) return;
    try {
      out.insert(Predicate::parse(item));
    } catch (const Error& e) {
      throw ConfigError("bad predicate '" + item + "': " + e.what());
    }
    item.clear();
  };
  for (char c : text) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c)))
      flush();
    else
      item += c;
  }
  flush();
  return out;
}

Config parse_config(std::string_view text, Config base) {
  Config c = std::move(base);
  std::istringstream in{std::string(text)};
  std::string raw;
  for (int line = 1; std::getline(in, raw); ++line) {
    auto s = trim(raw);
    if (s.empty() || s.front() == '#') continue;
    auto eq = s.find('=');
    if (eq == std::string_view::npos) throw ConfigError("config line " + std::to_string(line) + ": expected key = value");
    std::string key(trim(s.substr(0, eq)));
    std::string v = value_text(s.substr(eq + 1), line);
    if (key == "solver") {
      if (v == "builtin")
        c.solver.backend = Backend::Builtin;
      else if (v == "external")
        c.solver.backend = Backend::External;
      else
        throw ConfigError("config line " + std::to_string(line) + ": solver must be builtin or external");
    } else if (key == "solver_path") {
      c.solver.executable = v;
    } else if (key == "solver_args") {
      c.solver.extra_args.clear();
      std::istringstream words(v);
      for (std::string w; words >> w;) c.solver.extra_args.push_back(w);
    } else if (key == "solver_timeout") {
      c.solver.timeout_seconds = number<double>(v, key, line);
    } else if (key == "depth_bound") {
      c.depth_bound = number<int>(v, key, line);
      if (c.depth_bound < 1) throw ConfigError("config line " + std::to_string(line) + ": depth_bound must be positive");
    } else if (key == "integrity") {
      c.integrity = parse_predicate_list(v);
    } else if (key == "session_ttl") {
      c.session_ttl_seconds = number<double>(v, key, line);
    } else {
      throw ConfigError("config line " + std::to_string(line) + ": unknown key '" + key + "'");
    }
  }
  return c;
}

Config load_config(const std::filesystem::path& path, Config base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

}  // namespace kara
