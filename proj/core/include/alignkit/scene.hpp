#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace alignkit {

/// The closed color palette. Enumerator order is the tie-break order used by
/// color classification.
enum class Color : std::uint8_t { Green, Red, Yellow, Brown, Black, White, Blue };

inline constexpr std::size_t kPaletteSize = 7;
inline constexpr std::array<Color, kPaletteSize> kPalette = {
    Color::Green, Color::Red, Color::Yellow, Color::Brown,
    Color::Black, Color::White, Color::Blue};

/// Spatial relation of a subject instance with respect to an object instance:
/// `Left` reads "subject is on the left of object".
enum class RelationKind : std::uint8_t { Left, Right, Above, Below };

inline constexpr std::array<RelationKind, 4> kRelationKinds = {
    RelationKind::Left, RelationKind::Right, RelationKind::Above, RelationKind::Below};

enum class Axis : std::uint8_t { Horizontal, Vertical };

std::string_view to_string(Color c);
std::string_view to_string(RelationKind k);
std::string_view to_string(Axis a);
std::optional<Color> parse_color(std::string_view s);
std::optional<RelationKind> parse_relation_kind(std::string_view s);

Axis axis_of(RelationKind k);
RelationKind inverse(RelationKind k);

/// Addresses an instance by category and 1-based ordinal within the category.
struct InstanceRef {
  std::string category;
  int ordinal = 1;

  friend auto operator<=>(const InstanceRef&, const InstanceRef&) = default;
};

struct InstanceSpec {
  std::string category;
  int ordinal = 1;
  // Benchmark scenes always carry a color; hand-built scenes may leave it out,
  // in which case the instance contributes no color check.
  std::optional<Color> color;

  InstanceRef ref() const { return {category, ordinal}; }
  friend bool operator==(const InstanceSpec&, const InstanceSpec&) = default;
};

struct RelationSpec {
  InstanceRef subject;
  InstanceRef object;
  RelationKind kind = RelationKind::Left;

  friend bool operator==(const RelationSpec&, const RelationSpec&) = default;
};

/// Ground truth for one prompt.
///
/// Category order is the order in which categories were first listed (the
/// generator's sampling order). Instances are kept in canonical order
/// (category order, then ordinal) and relations sorted by the canonical
/// position of their subject, then object. Construction normalizes ordering
/// but does not validate; see `validate_scene`.
class StructuredScene {
 public:
  StructuredScene() = default;
  StructuredScene(std::vector<InstanceSpec> instances, std::vector<RelationSpec> relations);

  const std::vector<InstanceSpec>& instances() const { return instances_; }
  const std::vector<RelationSpec>& relations() const { return relations_; }
  const std::vector<std::string>& categories() const { return categories_; }

  std::size_t total_number() const { return instances_.size(); }
  std::size_t category_count() const { return categories_.size(); }
  int count(std::string_view category) const;
  int max_same_category() const;

  /// Canonical position of `ref`, or nullopt if it does not resolve.
  std::optional<std::size_t> index_of(const InstanceRef& ref) const;

  /// Number of color checks plus relation checks this scene asks for.
  std::size_t check_count() const;

  friend bool operator==(const StructuredScene&, const StructuredScene&) = default;

 private:
  std::vector<InstanceSpec> instances_;
  std::vector<RelationSpec> relations_;
  std::vector<std::string> categories_;
};

/// Category vocabulary with the colors each category may take.
class CompatibilityTable {
 public:
  CompatibilityTable() = default;
  /// Throws std::invalid_argument if any category has an empty color set.
  explicit CompatibilityTable(std::vector<std::pair<std::string, std::vector<Color>>> entries,
                              bool canonical = false);

  bool contains(std::string_view category) const;
  bool permits(std::string_view category, Color c) const;
  /// Permitted colors in palette order; throws std::out_of_range if unknown.
  const std::vector<Color>& colors(std::string_view category) const;
  const std::vector<std::string>& categories() const { return names_; }
  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }
  bool canonical() const { return canonical_; }

  friend bool operator==(const CompatibilityTable&, const CompatibilityTable&) = default;

 private:
  std::vector<std::string> names_;
  std::map<std::string, std::vector<Color>, std::less<>> colors_;
  bool canonical_ = false;
};

/// The shipped default: 66 color-annotatable object categories. Not the
/// original annotation (which is unpublished), so it is flagged non-canonical.
const CompatibilityTable& default_compatibility_table();

struct SceneLimits {
  std::size_t max_instances = 5;
  std::size_t max_relations = 6;
};

struct Violation {
  std::string code;
  std::string detail;
};

struct ValidationResult {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(std::string_view code) const;
};

namespace violation {
inline constexpr std::string_view kEmptyScene = "empty scene";
inline constexpr std::string_view kTooManyInstances = "too many instances";
inline constexpr std::string_view kTooManyRelations = "too many relations";
inline constexpr std::string_view kUnknownCategory = "unknown category";
inline constexpr std::string_view kBadOrdinal = "bad ordinal";
inline constexpr std::string_view kDuplicateOrdinal = "duplicate ordinal";
inline constexpr std::string_view kOrdinalGap = "ordinal gap";
inline constexpr std::string_view kColorNotPermitted = "color not permitted";
inline constexpr std::string_view kDanglingReference = "dangling reference";
inline constexpr std::string_view kSelfRelation = "self relation";
inline constexpr std::string_view kDuplicatePair = "duplicate pair relation";
inline constexpr std::string_view kHorizontalCycle = "horizontal cycle";
inline constexpr std::string_view kVerticalCycle = "vertical cycle";
}  // namespace violation

/// Checks every scene invariant and reports all violations found. Never throws.
ValidationResult validate_scene(const StructuredScene& scene, const CompatibilityTable& table,
                                const SceneLimits& limits = {});

/// One generated (or hand-built) benchmark item.
struct BenchmarkEntry {
  std::int64_t id = 0;
  std::uint64_t seed = 0;
  StructuredScene scene;
  std::string prompt;

  friend bool operator==(const BenchmarkEntry&, const BenchmarkEntry&) = default;
};

std::size_t word_count(std::string_view text);

}  // namespace alignkit
