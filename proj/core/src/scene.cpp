#include "alignkit/scene.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "alignkit/acyclic.hpp"

namespace alignkit {

std::string_view to_string(Color c) {
  switch (c) {
    case Color::Green: return "green";
    case Color::Red: return "red";
    case Color::Yellow: return "yellow";
    case Color::Brown: return "brown";
    case Color::Black: return "black";
    case Color::White: return "white";
    case Color::Blue: return "blue";
  }
  return "?";
}

std::string_view to_string(RelationKind k) {
  switch (k) {
    case RelationKind::Left: return "left";
    case RelationKind::Right: return "right";
    case RelationKind::Above: return "above";
    case RelationKind::Below: return "below";
  }
  return "?";
}

std::string_view to_string(Axis a) {
  return a == Axis::Horizontal ? "horizontal" : "vertical";
}

std::optional<Color> parse_color(std::string_view s) {
  for (auto c : kPalette) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

std::optional<RelationKind> parse_relation_kind(std::string_view s) {
  for (auto k : kRelationKinds) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

Axis axis_of(RelationKind k) {
  return (k == RelationKind::Left || k == RelationKind::Right) ? Axis::Horizontal
                                                               : Axis::Vertical;
}

RelationKind inverse(RelationKind k) {
  switch (k) {
    case RelationKind::Left: return RelationKind::Right;
    case RelationKind::Right: return RelationKind::Left;
    case RelationKind::Above: return RelationKind::Below;
    case RelationKind::Below: return RelationKind::Above;
  }
  return k;
}

// ---------------------------------------------------------------------------
// StructuredScene

StructuredScene::StructuredScene(std::vector<InstanceSpec> instances,
                                 std::vector<RelationSpec> relations)
    : instances_(std::move(instances)), relations_(std::move(relations)) {
  for (const auto& inst : instances_) {
    if (std::find(categories_.begin(), categories_.end(), inst.category) == categories_.end()) {
      categories_.push_back(inst.category);
    }
  }
  auto category_rank = [this](const std::string& name) {
    return std::find(categories_.begin(), categories_.end(), name) - categories_.begin();
  };
  std::stable_sort(instances_.begin(), instances_.end(),
                   [&](const InstanceSpec& a, const InstanceSpec& b) {
                     auto ra = category_rank(a.category);
                     auto rb = category_rank(b.category);
                     return ra != rb ? ra < rb : a.ordinal < b.ordinal;
                   });

  // Unresolvable references sort last so validation can still report them.
  auto position = [this](const InstanceRef& ref) {
    return index_of(ref).value_or(instances_.size());
  };
  std::stable_sort(relations_.begin(), relations_.end(),
                   [&](const RelationSpec& a, const RelationSpec& b) {
                     auto sa = position(a.subject);
                     auto sb = position(b.subject);
                     if (sa != sb) return sa < sb;
                     return position(a.object) < position(b.object);
                   });
}

int StructuredScene::count(std::string_view category) const {
  return static_cast<int>(std::count_if(instances_.begin(), instances_.end(),
                                        [&](const auto& i) { return i.category == category; }));
}

int StructuredScene::max_same_category() const {
  int best = 0;
  for (const auto& c : categories_) best = std::max(best, count(c));
  return best;
}

std::optional<std::size_t> StructuredScene::index_of(const InstanceRef& ref) const {
  for (std::size_t i = 0; i < instances_.size(); ++i) {
    if (instances_[i].category == ref.category && instances_[i].ordinal == ref.ordinal) return i;
  }
  return std::nullopt;
}

std::size_t StructuredScene::check_count() const {
  auto colored = std::count_if(instances_.begin(), instances_.end(),
                               [](const auto& i) { return i.color.has_value(); });
  return static_cast<std::size_t>(colored) + relations_.size();
}

// ---------------------------------------------------------------------------
// CompatibilityTable

CompatibilityTable::CompatibilityTable(
    std::vector<std::pair<std::string, std::vector<Color>>> entries, bool canonical)
    : canonical_(canonical) {
  for (auto& [name, colors] : entries) {
    if (name.empty()) throw std::invalid_argument("compatibility table: empty category name");
    if (colors.empty()) {
      throw std::invalid_argument("compatibility table: category '" + name + "' has no colors");
    }
    if (colors_.contains(name)) {
      throw std::invalid_argument("compatibility table: duplicate category '" + name + "'");
    }
    std::sort(colors.begin(), colors.end());
    colors.erase(std::unique(colors.begin(), colors.end()), colors.end());
    names_.push_back(name);
    colors_.emplace(name, std::move(colors));
  }
}

bool CompatibilityTable::contains(std::string_view category) const {
  return colors_.find(category) != colors_.end();
}

bool CompatibilityTable::permits(std::string_view category, Color c) const {
  auto it = colors_.find(category);
  if (it == colors_.end()) return false;
  return std::find(it->second.begin(), it->second.end(), c) != it->second.end();
}

const std::vector<Color>& CompatibilityTable::colors(std::string_view category) const {
  auto it = colors_.find(category);
  if (it == colors_.end()) {
    throw std::out_of_range("unknown category '" + std::string(category) + "'");
  }
  return it->second;
}

const CompatibilityTable& default_compatibility_table() {
  // Letters: g=green r=red y=yellow n=brown k=black w=white b=blue.
  static const std::pair<const char*, const char*> kRows[] = {
      {"bicycle", "grykwb"},      {"car", "grynkwb"},          {"motorcycle", "grykwb"},
      {"airplane", "grykwb"},     {"bus", "grywb"},            {"train", "grykwb"},
      {"truck", "grynkwb"},       {"boat", "grynkwb"},         {"traffic light", "gryk"},
      {"fire hydrant", "gryb"},   {"stop sign", "r"},          {"parking meter", "gykb"},
      {"bench", "grnkwb"},        {"bird", "grynkwb"},         {"cat", "nkw"},
      {"dog", "ynkw"},            {"horse", "nkw"},            {"sheep", "kw"},
      {"cow", "nkw"},             {"bear", "nkw"},             {"backpack", "grynkwb"},
      {"umbrella", "grynkwb"},    {"handbag", "grynkwb"},      {"tie", "grynkwb"},
      {"suitcase", "grynkwb"},    {"frisbee", "grynkwb"},      {"skis", "grykwb"},
      {"snowboard", "grykwb"},    {"sports ball", "grykwb"},   {"kite", "grykwb"},
      {"baseball bat", "ynkw"},   {"baseball glove", "nk"},    {"skateboard", "grynkwb"},
      {"surfboard", "grywb"},     {"tennis racket", "grykwb"}, {"bottle", "gnwb"},
      {"wine glass", "rw"},       {"cup", "grynkwb"},          {"bowl", "grynkwb"},
      {"banana", "gyn"},          {"apple", "gry"},            {"cake", "ynw"},
      {"chair", "grynkwb"},       {"couch", "grynkwb"},        {"potted plant", "g"},
      {"bed", "nkwb"},            {"dining table", "nkw"},     {"toilet", "w"},
      {"tv", "k"},                {"laptop", "rkwb"},          {"computer mouse", "kw"},
      {"remote", "kw"},           {"keyboard", "kw"},          {"cell phone", "rkwb"},
      {"microwave", "kw"},        {"oven", "kw"},              {"toaster", "rkw"},
      {"sink", "w"},              {"refrigerator", "kw"},      {"book", "grynkwb"},
      {"clock", "grynkwb"},       {"vase", "grynkwb"},         {"scissors", "grykb"},
      {"teddy bear", "ynw"},      {"hair drier", "rkwb"},      {"toothbrush", "grywb"},
  };
  static const CompatibilityTable table = [] {
    std::vector<std::pair<std::string, std::vector<Color>>> entries;
    for (const auto& [name, letters] : kRows) {
      std::vector<Color> colors;
      for (const char* p = letters; *p; ++p) {
        switch (*p) {
          case 'g': colors.push_back(Color::Green); break;
          case 'r': colors.push_back(Color::Red); break;
          case 'y': colors.push_back(Color::Yellow); break;
          case 'n': colors.push_back(Color::Brown); break;
          case 'k': colors.push_back(Color::Black); break;
          case 'w': colors.push_back(Color::White); break;
          case 'b': colors.push_back(Color::Blue); break;
          default: throw std::logic_error("bad color letter in default table");
        }
      }
      entries.emplace_back(name, std::move(colors));
    }
    return CompatibilityTable(std::move(entries), /*canonical=*/false);
  }();
  return table;
}

// ---------------------------------------------------------------------------
// Validation

bool ValidationResult::has(std::string_view code) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.code == code; });
}

namespace {

std::string describe(const InstanceRef& ref) {
  std::ostringstream os;
  os << ref.category << '#' << ref.ordinal;
  return os.str();
}

}  // namespace

ValidationResult validate_scene(const StructuredScene& scene, const CompatibilityTable& table,
                                const SceneLimits& limits) {
  ValidationResult result;
  auto report = [&](std::string_view code, std::string detail) {
    result.violations.push_back({std::string(code), std::move(detail)});
  };

  const auto n = scene.total_number();
  if (n == 0) report(violation::kEmptyScene, "scene has no instances");
  if (n > limits.max_instances) {
    report(violation::kTooManyInstances,
           std::to_string(n) + " > " + std::to_string(limits.max_instances));
  }
  if (scene.relations().size() > limits.max_relations) {
    report(violation::kTooManyRelations, std::to_string(scene.relations().size()) + " > " +
                                             std::to_string(limits.max_relations));
  }

  for (const auto& category : scene.categories()) {
    if (!table.contains(category)) report(violation::kUnknownCategory, category);
  }

  // Ordinals must be exactly 1..n_k within each category.
  for (const auto& category : scene.categories()) {
    std::vector<int> ordinals;
    for (const auto& inst : scene.instances()) {
      if (inst.category == category) ordinals.push_back(inst.ordinal);
    }
    std::sort(ordinals.begin(), ordinals.end());
    bool bad = false;
    for (auto o : ordinals) {
      if (o < 1) {
        report(violation::kBadOrdinal, category + " ordinal " + std::to_string(o));
        bad = true;
      }
    }
    if (std::adjacent_find(ordinals.begin(), ordinals.end()) != ordinals.end()) {
      report(violation::kDuplicateOrdinal, category);
      bad = true;
    }
    if (!bad && !ordinals.empty() && ordinals.back() != static_cast<int>(ordinals.size())) {
      report(violation::kOrdinalGap, category);
    }
  }

  for (const auto& inst : scene.instances()) {
    if (inst.color && table.contains(inst.category) && !table.permits(inst.category, *inst.color)) {
      report(violation::kColorNotPermitted,
             describe(inst.ref()) + " is " + std::string(to_string(*inst.color)));
    }
  }

  std::set<std::pair<std::size_t, std::size_t>> pairs;
  bool references_ok = true;
  for (const auto& r : scene.relations()) {
    auto s = scene.index_of(r.subject);
    auto o = scene.index_of(r.object);
    if (!s) {
      report(violation::kDanglingReference, describe(r.subject));
      references_ok = false;
    }
    if (!o) {
      report(violation::kDanglingReference, describe(r.object));
      references_ok = false;
    }
    if (!s || !o) continue;
    if (*s == *o) {
      report(violation::kSelfRelation, describe(r.subject));
      references_ok = false;
      continue;
    }
    if (!pairs.insert(std::minmax(*s, *o)).second) {
      report(violation::kDuplicatePair, describe(r.subject) + " / " + describe(r.object));
    }
  }

  if (references_ok) {
    if (check_acyclic(scene, Axis::Horizontal) == RingCheck::Ring) {
      report(violation::kHorizontalCycle, "left/right relations form a ring");
    }
    if (check_acyclic(scene, Axis::Vertical) == RingCheck::Ring) {
      report(violation::kVerticalCycle, "above/below relations form a ring");
    }
  }
  return result;
}

std::size_t word_count(std::string_view text) {
  std::size_t words = 0;
  bool in_word = false;
  for (char ch : text) {
    const bool space = ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r';
    if (!space && !in_word) ++words;
    in_word = !space;
  }
  return words;
}

}  // namespace alignkit
