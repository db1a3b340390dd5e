#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "alignkit/align_score.hpp"
#include "alignkit/detection.hpp"
#include "alignkit/guidance.hpp"
#include "alignkit/reviser.hpp"
#include "alignkit/scene.hpp"
#include "alignkit/stats.hpp"

namespace alignkit::io {

inline constexpr std::string_view kBenchmarkSchema = "alignkit.benchmark/1";
inline constexpr std::string_view kDetectionSchema = "alignkit.detections/1";
inline constexpr std::string_view kScoreSchema = "alignkit.scores/1";
inline constexpr std::string_view kEnforceSchema = "alignkit.enforce/1";
inline constexpr std::string_view kVocabularySchema = "alignkit.vocabulary/1";
inline constexpr std::string_view kToySchema = "alignkit.toy/1";

/// Malformed input. `line` is 1-based (0 when not applicable); `field` is a
/// JSON-pointer-like path to the offending field.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, std::size_t line, std::string field, const std::string& what);

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::string source_;
  std::size_t line_;
  std::string field_;
};

// Scenes and benchmark files ------------------------------------------------

/// One-line JSON object for the scene (categories with per-category instance
/// lists; ids are ordinal - 1; relations stored on their subject).
std::string serialize_scene(const StructuredScene& scene);
StructuredScene parse_scene(std::string_view text);

std::string serialize_entry(const BenchmarkEntry& entry);
BenchmarkEntry parse_entry(std::string_view text, const std::string& source = "<entry>",
                           std::size_t line = 0);

/// JSON Lines: a header line carrying the schema tag, then one entry per line.
void write_benchmark(std::ostream& out, const std::vector<BenchmarkEntry>& entries);
std::vector<BenchmarkEntry> read_benchmark(std::istream& in, const std::string& source);

// Vocabulary ------------------------------------------------------------------

std::string serialize_vocabulary(const CompatibilityTable& table);
CompatibilityTable parse_vocabulary(std::string_view text, const std::string& source);

// Detection records --------------------------------------------------------------

struct DetectionRecord {
  std::int64_t image_id = 0;
  std::vector<RawDetection> detections;

  friend bool operator==(const DetectionRecord&, const DetectionRecord&) = default;
};

std::string serialize_detection_record(const DetectionRecord& record);
DetectionRecord parse_detection_record(std::string_view text, const std::string& source);

// Score reports --------------------------------------------------------------------

struct ScoreFile {
  std::vector<ScoredPrompt> prompts;
  AggregateScore aggregate;
};

std::string serialize_score_file(const ScoreFile& file);
ScoreFile parse_score_file(std::string_view text, const std::string& source);

// Enforce pairs ---------------------------------------------------------------------

struct EnforceRecord {
  std::int64_t id = 0;
  std::uint64_t seed = 0;
  std::string prompt;
  EnforcePair pair;

  friend bool operator==(const EnforceRecord&, const EnforceRecord&) = default;
};

struct EnforceFile {
  std::vector<EnforceRecord> records;
  std::optional<std::string> notice;
};

std::string serialize_enforce_file(const EnforceFile& file);
EnforceFile parse_enforce_file(std::string_view text, const std::string& source);

// Toy denoiser fixture ----------------------------------------------------------------

struct ToyFixture {
  std::size_t dim = 0;
  guidance::Vector matrix;  // row-major
  double eta = 0.1;
  guidance::Vector x0;
  std::map<std::string, guidance::Vector> embeddings;
};

ToyFixture parse_toy_fixture(std::string_view text, const std::string& source);

// Files ------------------------------------------------------------------------------

std::string read_file(const std::string& path);
/// Writes through a temporary file in the same directory, then renames.
void write_file_atomic(const std::string& path, std::string_view content);

}  // namespace alignkit::io
