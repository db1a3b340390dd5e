#include "cycle_oracle.hpp"

#include <functional>

namespace oracle {

using namespace alignkit;

bool has_cycle(std::size_t n, const std::vector<Edge>& edges) {
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& e : edges) adj[e.from].push_back(e.to);
  enum State { White, Gray, Black };
  std::vector<State> state(n, White);
  std::function<bool(std::size_t)> dfs = [&](std::size_t v) {
    state[v] = Gray;
    for (auto w : adj[v]) {
      if (state[w] == Gray) return true;
      if (state[w] == White && dfs(w)) return true;
    }
    state[v] = Black;
    return false;
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (state[v] == White && dfs(v)) return true;
  }
  return false;
}

std::vector<Edge> axis_edges(const StructuredScene& scene, Axis axis) {
  const auto& inst = scene.instances();
  auto position = [&](const InstanceRef& ref) {
    for (std::size_t i = 0; i < inst.size(); ++i) {
      if (inst[i].category == ref.category && inst[i].ordinal == ref.ordinal) return i;
    }
    return inst.size();
  };
  std::vector<Edge> edges;
  for (const auto& r : scene.relations()) {
    const auto s = position(r.subject);
    const auto o = position(r.object);
    if (s == inst.size() || o == inst.size()) continue;
    const bool horizontal = r.kind == RelationKind::Left || r.kind == RelationKind::Right;
    if (horizontal != (axis == Axis::Horizontal)) continue;
    if (r.kind == RelationKind::Left || r.kind == RelationKind::Above) {
      edges.push_back({s, o});
    } else {
      edges.push_back({o, s});
    }
  }
  return edges;
}

bool scene_has_cycle(const StructuredScene& scene, Axis axis) {
  return has_cycle(scene.instances().size(), axis_edges(scene, axis));
}

}  // namespace oracle
