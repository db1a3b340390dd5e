#pragma once

#include <cstddef>
#include <span>

#include "alignkit/scene.hpp"

namespace alignkit {

/// Relation between instances addressed by canonical position.
struct IndexedRelation {
  std::size_t subject = 0;
  std::size_t object = 0;
  RelationKind kind = RelationKind::Left;
};

enum class RingCheck { NoRing, Ring };

/// Kahn-style topological sort over the relations on one axis. Left/right
/// (resp. above/below) are folded into a single direction so that
/// "a left of b" and "b right of a" are the same edge. Relations on the other
/// axis are ignored. Indices must be < node_count.
RingCheck check_acyclic(std::size_t node_count, std::span<const IndexedRelation> relations,
                        Axis axis);

/// Same check on a scene; unresolvable relation references are skipped.
RingCheck check_acyclic(const StructuredScene& scene, Axis axis);

std::vector<IndexedRelation> index_relations(const StructuredScene& scene);

}  // namespace alignkit
