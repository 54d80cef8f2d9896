#include "kara/server.hpp"

#include <httplib.h>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include <json.hpp>

#include "kara/abduction.hpp"
#include "kara/edit.hpp"
#include "kara/parser.hpp"
#include "kara/pipeline.hpp"
#include "kara/scene_json.hpp"

namespace kara {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

namespace {

struct Session {
  Program program;
  Interpretation original;
  EditLog log;
  std::uint64_t seed = 0;
  Clock::time_point last_used;

  // Held for the whole of an edit or abduction; contenders get 409.
  std::mutex busy;
  // Guards the fields above for short reads and writes.
  std::mutex state;
};

// Request failure carrying the HTTP status.
struct HttpError {
  int status;
  std::string message;
};

json atoms_json(const Interpretation& i) {
  json out = json::array();
  for (const auto& a : i) out.push_back(a.str());
  return out;
}

json parse_body(const httplib::Request& req, bool allow_empty = false) {
  if (allow_empty && req.body.empty()) return json::object();
  json body = json::parse(req.body, nullptr, false);
  if (body.is_discarded() || !body.is_object()) throw HttpError{400, "request body must be a JSON object"};
  return body;
}

std::string string_field(const json& body, const char* key, bool required) {
  if (!body.contains(key)) {
    if (required) throw HttpError{400, std::string("missing field '") + key + "'"};
    return {};
  }
  if (!body.at(key).is_string()) throw HttpError{400, std::string("field '") + key + "' must be a string"};
  return body.at(key).get<std::string>();
}

std::vector<std::string> string_list(const json& body, const char* key) {
  std::vector<std::string> out;
  if (!body.contains(key)) return out;
  const auto& v = body.at(key);
  if (!v.is_array()) throw HttpError{400, std::string("field '") + key + "' must be an array of strings"};
  for (const auto& item : v) {
    if (!item.is_string()) throw HttpError{400, std::string("field '") + key + "' must be an array of strings"};
    out.push_back(item.get<std::string>());
  }
  return out;
}

bool bool_field(const json& body, const char* key, bool fallback) {
  if (!body.contains(key)) return fallback;
  if (!body.at(key).is_boolean()) throw HttpError{400, std::string("field '") + key + "' must be a boolean"};
  return body.at(key).get<bool>();
}

std::set<Predicate> predicate_field(const json& body, const char* key) {
  std::set<Predicate> out;
  for (const auto& s : string_list(body, key)) {
    try {
      out.insert(Predicate::parse(s));
    } catch (const Error& e) {
      throw HttpError{400, e.what()};
    }
  }
  return out;
}

json parse_error_json(const ParseError& e) {
  return {{"error", e.what()}, {"line", e.location().line}, {"column", e.location().column}};
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

struct Service::Impl {
  ServiceOptions options;
  mutable std::mutex mu;
  std::map<std::string, std::shared_ptr<Session>> sessions;
  std::uint64_t next_id = 1;

  explicit Impl(ServiceOptions o) : options(std::move(o)) {}

  std::chrono::duration<double> ttl() const { return std::chrono::duration<double>(options.config.session_ttl_seconds); }

  void purge_locked(Clock::time_point now) {
    std::erase_if(sessions, [&](const auto& kv) {
      std::lock_guard lock(kv.second->state);
      return now - kv.second->last_used > ttl();
    });
  }

  std::shared_ptr<Session> find(const std::string& id) {
    std::lock_guard lock(mu);
    auto now = Clock::now();
    purge_locked(now);
    auto it = sessions.find(id);
    if (it == sessions.end()) throw HttpError{404, "no session " + id};
    std::lock_guard state(it->second->state);
    it->second->last_used = now;
    return it->second;
  }

  PipelineOptions pipeline(std::uint64_t seed) const {
    auto p = pipeline_options(options.config);
    p.seed = seed;
    return p;
  }

  // Scene of the session's current I'_v. A layout failure is reported in
  // the payload instead of failing the request, so edits stay visible.
  json scene_payload(Session& s) {
    Interpretation vis;
    std::uint64_t seed;
    std::size_t edits;
    {
      std::lock_guard lock(s.state);
      vis = s.log.current();
      seed = s.seed;
      edits = s.log.edits().size();
    }
    Scene scene = build_scene(vis);
    json out;
    try {
      auto r = render(scene, pipeline(seed));
      out = scene_to_json(scene, &r.layout);
    } catch (const LayoutError& e) {
      out = scene_to_json(scene);
      out["layoutError"] = e.what();
    }
    out["edits"] = edits;
    return out;
  }

  json visualize(const httplib::Request& req) {
    auto body = parse_body(req);
    auto program_text = string_field(body, "program", true);
    auto facts_text = string_field(body, "interpretation", false);
    std::uint64_t seed = 0;
    if (body.contains("seed")) {
      if (!body.at("seed").is_number_unsigned()) throw HttpError{400, "field 'seed' must be a non-negative integer"};
      seed = body.at("seed").get<std::uint64_t>();
    }
    Program program;
    Interpretation input;
    try {
      program = parse_program(program_text);
      input = parse_interpretation(facts_text);
    } catch (const ParseError& e) {
      throw HttpError{400, parse_error_json(e).dump()};
    } catch (const InconsistentError& e) {
      throw HttpError{400, e.what()};
    }
    auto v = kara::visualize(program, input, pipeline(seed));

    auto session = std::make_shared<Session>();
    session->program = std::move(program);
    session->original = std::move(input);
    session->log = EditLog(v.vis);
    session->seed = seed;
    session->last_used = Clock::now();
    std::string id;
    {
      std::lock_guard lock(mu);
      purge_locked(session->last_used);
      id = "s" + std::to_string(next_id++);
      sessions.emplace(id, session);
    }
    json diagnostics = json::array();
    for (const auto& d : v.diagnostics) diagnostics.push_back(d.str());
    json out = {{"sessionId", id}, {"answerSets", v.answer_sets}, {"diagnostics", diagnostics}};
    out["scene"] = scene_to_json(v.rendering.scene, &v.rendering.layout);
    out["scene"]["edits"] = 0;
    return out;
  }

  json edit(const std::string& id, const httplib::Request& req) {
    auto s = find(id);
    EditOp op;
    try {
      op = edit_from_json(parse_body(req));
    } catch (const EditError& e) {
      throw HttpError{400, e.what()};
    }
    std::unique_lock busy(s->busy, std::try_to_lock);
    if (!busy) throw HttpError{409, "session " + id + " is busy"};
    {
      std::lock_guard lock(s->state);
      try {
        s->log.apply(op);
      } catch (const EditError& e) {
        throw HttpError{422, e.what()};
      } catch (const InconsistentError& e) {
        throw HttpError{422, e.what()};
      }
    }
    return scene_payload(*s);
  }

  json undo(const std::string& id) {
    auto s = find(id);
    std::unique_lock busy(s->busy, std::try_to_lock);
    if (!busy) throw HttpError{409, "session " + id + " is busy"};
    {
      std::lock_guard lock(s->state);
      if (!s->log.undo()) throw HttpError{422, "nothing to undo"};
    }
    return scene_payload(*s);
  }

  json abduce(const std::string& id, const httplib::Request& req) {
    auto s = find(id);
    auto body = parse_body(req, true);
    std::unique_lock busy(s->busy, std::try_to_lock);
    if (!busy) throw HttpError{409, "session " + id + " is busy"};
    Interpretation edited;
    {
      std::lock_guard lock(s->state);
      edited = s->log.current();
    }

    AbductionOptions abd;
    abd.solver = options.config.solver;
    abd.all = bool_field(body, "all", false);
    if (bool_field(body, "preferOriginal", true)) abd.prefer = &s->original;
    auto sets = default_predicate_sets(s->program);
    if (options.config.integrity) sets.integrity = *options.config.integrity;
    if (body.contains("integrity")) sets.integrity = predicate_field(body, "integrity");
    if (body.contains("abducibles")) sets.abducibles = predicate_field(body, "abducibles");
    abd.sets = sets;
    for (const auto& t : string_list(body, "domainTerms")) {
      try {
        abd.domain.extra_terms.insert(parse_term(t));
      } catch (const ParseError& e) {
        throw HttpError{400, e.what()};
      }
    }

    auto result = kara::abduce(edited, s->program, abd);
    if (result.unsat()) return {{"result", "unsat"}};
    json out = {{"result", "sat"},
                {"interpretation", atoms_json(*result.interpretation)},
                {"facts", result.interpretation->to_facts()}};
    out["verified"] = verify_roundtrip(*result.interpretation, s->program, edited, result.sets.integrity, abd.solver);
    if (abd.all) {
      out["alternatives"] = json::array();
      for (const auto& alt : result.alternatives) out["alternatives"].push_back(atoms_json(alt));
    }
    return out;
  }

  json interpretation(const std::string& id) {
    auto s = find(id);
    std::lock_guard lock(s->state);
    return {{"original", atoms_json(s->original)}, {"vis", atoms_json(s->log.current())}};
  }

  std::string svg(const std::string& id) {
    auto s = find(id);
    Interpretation vis;
    std::uint64_t seed;
    {
      std::lock_guard lock(s->state);
      vis = s->log.current();
      seed = s->seed;
    }
    return render_vis(vis, pipeline(seed)).svg;
  }

  std::vector<std::string> corpus_names() const {
    std::vector<std::string> out;
    const auto& dir = options.corpus_dir;
    std::error_code ec;
    if (dir.empty() || !std::filesystem::is_directory(dir, ec)) return out;
    for (const auto& entry : std::filesystem::directory_iterator(dir, ec))
      if (std::filesystem::exists(entry.path() / "vis.lp")) out.push_back(entry.path().filename().string());
    std::sort(out.begin(), out.end());
    return out;
  }

  json corpus_entry(const std::string& name) const {
    auto names = corpus_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) throw HttpError{404, "no corpus example " + name};
    auto dir = options.corpus_dir / name;
    json out = {{"name", name}, {"program", read_file(dir / "vis.lp")}, {"interpretation", ""}};
    if (std::filesystem::exists(dir / "facts.lp")) out["interpretation"] = read_file(dir / "facts.lp");
    return out;
  }
};

namespace {

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& message) {
  // Parse errors arrive pre-encoded with their location.
  json body = json::parse(message, nullptr, false);
  if (body.is_discarded() || !body.is_object()) body = {{"error", message}};
  send_json(res, status, body);
}

// Maps exceptions of a handler to status codes.
template <class F>
void guarded(httplib::Response& res, F&& f) {
  try {
    f();
  } catch (const HttpError& e) {
    send_error(res, e.status, e.message);
  } catch (const ParseError& e) {
    send_json(res, 400, parse_error_json(e));
  } catch (const ConfigError& e) {
    send_error(res, 400, e.what());
  } catch (const Error& e) {
    // No answer set, grounding, backend, layout, validation, abduction setup.
    send_error(res, 422, e.what());
  } catch (const std::exception& e) {
    send_error(res, 500, e.what());
  }
}

}  // namespace

Service::Service(ServiceOptions options) : impl_(std::make_unique<Impl>(std::move(options))) {}
Service::~Service() = default;

std::size_t Service::session_count() const {
  std::lock_guard lock(impl_->mu);
  return impl_->sessions.size();
}

void Service::install(httplib::Server& server) {
  Impl* impl = impl_.get();
  server.Get("/api/corpus", [impl](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] { send_json(res, 200, impl->corpus_names()); });
  });
  server.Get("/api/corpus/:name", [impl](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send_json(res, 200, impl->corpus_entry(req.path_params.at("name"))); });
  });
  server.Post("/api/visualize", [impl](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send_json(res, 200, impl->visualize(req)); });
  });
  server.Get("/api/session/:id/scene", [impl](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send_json(res, 200, impl->scene_payload(*impl->find(req.path_params.at("id")))); });
  });
  server.Get("/api/session/:id/svg", [impl](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      res.status = 200;
      res.set_content(impl->svg(req.path_params.at("id")), "image/svg+xml");
    });
  });
  server.Get("/api/session/:id/interpretation", [impl](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send_json(res, 200, impl->interpretation(req.path_params.at("id"))); });
  });
  server.Post("/api/session/:id/edit", [impl](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send_json(res, 200, impl->edit(req.path_params.at("id"), req)); });
  });
  server.Post("/api/session/:id/undo", [impl](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send_json(res, 200, impl->undo(req.path_params.at("id"))); });
  });
  server.Post("/api/session/:id/abduce", [impl](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send_json(res, 200, impl->abduce(req.path_params.at("id"), req)); });
  });
}

bool serve(const ServiceOptions& options, const std::string& host, int port) {
  Service service(options);
  httplib::Server server;
  service.install(server);
  return server.listen(host, port);
}

}  // namespace kara
