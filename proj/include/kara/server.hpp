#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "kara/config.hpp"

namespace httplib {
class Server;
}

namespace kara {

struct ServiceOptions {
  Config config;
  /// Directory of example sub-directories (vis.lp, facts.lp); may be empty.
  std::filesystem::path corpus_dir;
};

/// HTTP/JSON service backing the visual editor. Sessions hold the program,
/// the original interpretation and the edit log; I'_v is recomputed from the
/// log. Session ids are sequential, so replaying the same requests against a
/// fresh service gives the same responses.
///
///   GET  /api/corpus                     names of the corpus examples
///   GET  /api/corpus/{name}              {program, interpretation}
///   POST /api/visualize                  {program, interpretation, seed} -> {sessionId, scene, ...}
///   GET  /api/session/{id}/scene         scene JSON with layout
///   GET  /api/session/{id}/svg           image/svg+xml
///   GET  /api/session/{id}/interpretation  {original, vis}
///   POST /api/session/{id}/edit          EditOp JSON -> scene
///   POST /api/session/{id}/undo          -> scene
///   POST /api/session/{id}/abduce        overrides -> {result: "sat", interpretation, ...} or {result: "unsat"}
///
/// Errors: 400 malformed body, 404 unknown or expired session, 422 rejected
/// edit or failing pipeline, 409 while another edit or abduction of the same
/// session is running.
class Service {
 public:
  explicit Service(ServiceOptions options);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  void install(httplib::Server& server);
  std::size_t session_count() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Blocks serving on host:port. Returns false if the port cannot be bound.
bool serve(const ServiceOptions& options, const std::string& host, int port);

}  // namespace kara
