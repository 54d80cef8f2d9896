#pragma once

#include <json.hpp>

#include "kara/layout.hpp"
#include "kara/scene.hpp"

namespace kara {

/// Scene as exchanged with the editor. Terms are written in dialect syntax.
/// Connections go to "connections", every other element to "elements";
/// "graphs" lists graph membership. When `layout` is given it is embedded
/// under "layout".
nlohmann::json scene_to_json(const Scene& scene, const LayoutResult* layout = nullptr);

/// Inverse of scene_to_json (the layout part is ignored). Throws Error on
/// malformed input.
Scene scene_from_json(const nlohmann::json& json);

nlohmann::json layout_to_json(const LayoutResult& layout);

}  // namespace kara
