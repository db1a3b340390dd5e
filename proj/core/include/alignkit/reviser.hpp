#pragma once

#include <optional>
#include <string>
#include <vector>

#include "alignkit/align_score.hpp"
#include "alignkit/scene.hpp"

namespace alignkit {

struct CountError {
  std::string category;
  int required = 0;
  int detected = 0;
  friend bool operator==(const CountError&, const CountError&) = default;
};

struct ColorError {
  InstanceRef instance;
  Color required = Color::Green;
  std::optional<Color> detected;  // nullopt: matched to a blank
  friend bool operator==(const ColorError&, const ColorError&) = default;
};

struct RelationError {
  RelationSpec relation;
  std::optional<RelationSet> detected;  // nullopt: an endpoint is blank
  friend bool operator==(const RelationError&, const RelationError&) = default;
};

/// Failed items of one score report, in the scene's canonical order.
struct MisalignmentReport {
  std::vector<CountError> counts;
  std::vector<ColorError> colors;
  std::vector<RelationError> relations;

  bool empty() const { return counts.empty() && colors.empty() && relations.empty(); }
  friend bool operator==(const MisalignmentReport&, const MisalignmentReport&) = default;
};

/// Collects the false verdicts of `report`. The report already carries the
/// detected counts and per-check detections under the winning matching, so
/// no detection set is needed.
MisalignmentReport diagnose(const ScoreReport& report, const StructuredScene& scene);

struct EnforcePair {
  std::string c1;  // how the failed parts should look
  std::string c2;  // how they currently look
  friend bool operator==(const EnforcePair&, const EnforcePair&) = default;
};

/// Paired prompts for the enforce step: count clauses ("2 bowl"), then color
/// clauses, then relation clauses, each group in canonical order and joined
/// by ". ". c2 mirrors c1 clause for clause, stating the detected value where
/// one exists and negating the target otherwise ("The second bowl is not
/// white"). Throws std::invalid_argument if `mis` is empty.
EnforcePair build_enforce_pair(const MisalignmentReport& mis);

}  // namespace alignkit
