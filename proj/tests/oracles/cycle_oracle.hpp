#pragma once

#include <cstddef>
#include <vector>

#include "alignkit/scene.hpp"

namespace oracle {

struct Edge {
  std::size_t from;
  std::size_t to;
};

/// Three-color depth-first search for a directed cycle.
bool has_cycle(std::size_t n, const std::vector<Edge>& edges);

/// Edges "a precedes b" on the axis: left-of and above point subject to
/// object, right-of and below point object to subject.
std::vector<Edge> axis_edges(const alignkit::StructuredScene& scene, alignkit::Axis axis);

bool scene_has_cycle(const alignkit::StructuredScene& scene, alignkit::Axis axis);

}  // namespace oracle
