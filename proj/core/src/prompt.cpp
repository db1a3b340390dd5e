#include "alignkit/prompt.hpp"

#include <array>
#include <stdexcept>

namespace alignkit {

namespace {

constexpr std::array<std::string_view, 10> kNumbers = {
    "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten"};
constexpr std::array<std::string_view, 10> kOrdinals = {
    "first", "second", "third", "fourth", "fifth",
    "sixth", "seventh", "eighth", "ninth", "tenth"};

}  // namespace

std::string_view number_word(int n) {
  if (n < 1 || n > static_cast<int>(kNumbers.size())) {
    throw std::out_of_range("no number word for " + std::to_string(n));
  }
  return kNumbers[n - 1];
}

std::string_view ordinal_word(int n) {
  if (n < 1 || n > static_cast<int>(kOrdinals.size())) {
    throw std::out_of_range("no ordinal word for " + std::to_string(n));
  }
  return kOrdinals[n - 1];
}

std::string_view relation_phrase(RelationKind k) {
  switch (k) {
    case RelationKind::Left: return "on the left of";
    case RelationKind::Right: return "on the right of";
    case RelationKind::Above: return "above";
    case RelationKind::Below: return "below";
  }
  return "";
}

std::string instance_phrase(const InstanceRef& ref) {
  std::string out = "the ";
  out += ordinal_word(ref.ordinal);
  out += ' ';
  out += ref.category;
  return out;
}

std::string render_prompt(const StructuredScene& scene) {
  std::string out = "A photo-realistic image of ";
  bool first = true;
  for (const auto& category : scene.categories()) {
    if (!first) out += ", ";
    first = false;
    out += number_word(scene.count(category));
    out += ' ';
    out += category;
  }
  out += '.';

  for (const auto& inst : scene.instances()) {
    std::string clauses;
    if (inst.color) clauses += to_string(*inst.color);
    for (const auto& r : scene.relations()) {
      if (r.subject != inst.ref()) continue;
      if (!clauses.empty()) clauses += ", ";
      clauses += relation_phrase(r.kind);
      clauses += ' ';
      clauses += instance_phrase(r.object);
    }
    if (clauses.empty()) continue;
    out += " The ";
    out += ordinal_word(inst.ordinal);
    out += ' ';
    out += inst.category;
    out += " is ";
    out += clauses;
    out += '.';
  }
  return out;
}

std::string fill_template(const StructuredScene& scene, const CompatibilityTable& table,
                          const SceneLimits& limits) {
  const auto check = validate_scene(scene, table, limits);
  if (!check.ok()) {
    const auto& v = check.violations.front();
    throw std::invalid_argument("fill_template: invalid scene (" + v.code + ": " + v.detail + ")");
  }
  return render_prompt(scene);
}

}  // namespace alignkit
