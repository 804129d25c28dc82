#pragma once
// JSON interchange for hypermaps and point sets, and graphviz export.

#include <json.hpp>
#include <string>

#include "kiss12/fan.hpp"
#include "kiss12/hypermap.hpp"

namespace kiss12 {

// {"dart_count": N, "e": [...], "n": [...]}; f is always derived.
nlohmann::json hypermap_to_json(const Hypermap& h);
Hypermap hypermap_from_json(const nlohmann::json& j);

// Point sets as arrays of [x,y,z].
nlohmann::json points_to_json(const std::vector<Vec3>& pts);
std::vector<Vec3> points_from_json(const nlohmann::json& j);

// Undirected node-edge graph with one comment line per face.
std::string hypermap_to_dot(const Hypermap& h);

}  // namespace kiss12
