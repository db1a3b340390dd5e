#include "alignkit/reviser.hpp"

#include <stdexcept>

#include "alignkit/prompt.hpp"

namespace alignkit {

namespace {

std::string subject_phrase(const InstanceRef& ref) {
  std::string out = "The ";
  out += ordinal_word(ref.ordinal);
  out += ' ';
  out += ref.category;
  return out;
}

std::string relation_clause(const RelationSpec& r, RelationKind kind, bool negated) {
  std::string out = subject_phrase(r.subject);
  out += negated ? " is not " : " is ";
  out += relation_phrase(kind);
  out += ' ';
  out += instance_phrase(r.object);
  return out;
}

std::string join(const std::vector<std::string>& clauses) {
  std::string out;
  for (const auto& c : clauses) {
    if (!out.empty()) out += ". ";
    out += c;
  }
  return out;
}

}  // namespace

MisalignmentReport diagnose(const ScoreReport& report, const StructuredScene& scene) {
  MisalignmentReport mis;
  // Report verdicts follow canonical order already; walk the scene so that
  // hand-assembled reports are normalized too.
  for (const auto& category : scene.categories()) {
    for (const auto& c : report.counts) {
      if (c.category == category && !c.correct()) {
        mis.counts.push_back({c.category, c.required, c.detected});
      }
    }
  }
  for (const auto& inst : scene.instances()) {
    for (const auto& v : report.colors) {
      if (v.instance == inst.ref() && !v.correct) {
        mis.colors.push_back({v.instance, v.required, v.detected});
      }
    }
  }
  for (const auto& r : scene.relations()) {
    for (const auto& v : report.relations) {
      if (v.relation == r && !v.correct) mis.relations.push_back({v.relation, v.detected});
    }
  }
  return mis;
}

EnforcePair build_enforce_pair(const MisalignmentReport& mis) {
  if (mis.empty()) throw std::invalid_argument("build_enforce_pair: nothing to enforce");

  std::vector<std::string> target;
  std::vector<std::string> current;
  for (const auto& c : mis.counts) {
    target.push_back(std::to_string(c.required) + ' ' + c.category);
    current.push_back(std::to_string(c.detected) + ' ' + c.category);
  }
  for (const auto& c : mis.colors) {
    const auto who = subject_phrase(c.instance);
    target.push_back(who + " is " + std::string(to_string(c.required)));
    if (c.detected) {
      current.push_back(who + " is " + std::string(to_string(*c.detected)));
    } else {
      current.push_back(who + " is not " + std::string(to_string(c.required)));
    }
  }
  for (const auto& r : mis.relations) {
    target.push_back(relation_clause(r.relation, r.relation.kind, false));
    if (r.detected && !r.detected->empty()) {
      std::string clause = subject_phrase(r.relation.subject) + " is ";
      bool first = true;
      for (auto k : r.detected->kinds()) {
        if (!first) clause += ", ";
        first = false;
        clause += relation_phrase(k);
        clause += ' ';
        clause += instance_phrase(r.relation.object);
      }
      current.push_back(std::move(clause));
    } else {
      current.push_back(relation_clause(r.relation, r.relation.kind, true));
    }
  }
  return {join(target), join(current)};
}

}  // namespace alignkit
