#include "alignkit/acyclic.hpp"

#include <deque>
#include <stdexcept>
#include <vector>

namespace alignkit {

namespace {

// Edge from the node that comes first along the axis (left-most / top-most)
// to the one that comes after it.
struct Edge {
  std::size_t from;
  std::size_t to;
};

std::vector<Edge> axis_edges(std::span<const IndexedRelation> relations, Axis axis) {
  std::vector<Edge> edges;
  for (const auto& r : relations) {
    if (axis_of(r.kind) != axis) continue;
    switch (r.kind) {
      case RelationKind::Left:
      case RelationKind::Above:
        edges.push_back({r.subject, r.object});
        break;
      case RelationKind::Right:
      case RelationKind::Below:
        edges.push_back({r.object, r.subject});
        break;
    }
  }
  return edges;
}

}  // namespace

RingCheck check_acyclic(std::size_t node_count, std::span<const IndexedRelation> relations,
                        Axis axis) {
  const auto edges = axis_edges(relations, axis);
  std::vector<std::size_t> in_degree(node_count, 0);
  std::vector<std::vector<std::size_t>> successors(node_count);
  for (const auto& e : edges) {
    if (e.from >= node_count || e.to >= node_count) {
      throw std::out_of_range("check_acyclic: relation index out of range");
    }
    ++in_degree[e.to];
    successors[e.from].push_back(e.to);
  }

  std::deque<std::size_t> queue;
  std::size_t settled = 0;
  for (std::size_t i = 0; i < node_count; ++i) {
    if (in_degree[i] == 0) {
      queue.push_back(i);
      ++settled;
    }
  }
  while (!queue.empty()) {
    const auto q = queue.front();
    queue.pop_front();
    for (auto next : successors[q]) {
      if (--in_degree[next] == 0) {
        queue.push_back(next);
        ++settled;
      }
    }
  }
  return settled == node_count ? RingCheck::NoRing : RingCheck::Ring;
}

std::vector<IndexedRelation> index_relations(const StructuredScene& scene) {
  std::vector<IndexedRelation> out;
  out.reserve(scene.relations().size());
  for (const auto& r : scene.relations()) {
    auto s = scene.index_of(r.subject);
    auto o = scene.index_of(r.object);
    if (s && o) out.push_back({*s, *o, r.kind});
  }
  return out;
}

RingCheck check_acyclic(const StructuredScene& scene, Axis axis) {
  const auto indexed = index_relations(scene);
  return check_acyclic(scene.total_number(), indexed, axis);
}

}  // namespace alignkit
