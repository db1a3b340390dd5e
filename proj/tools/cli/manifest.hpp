#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

namespace alignkit::cli {

/// Lowercase hex SHA-256 of `data`.
std::string sha256_hex(std::string_view data);

/// Record of one run: enough to reproduce it byte for byte. No timestamps, so
/// identical runs produce identical manifests.
class RunManifest {
 public:
  explicit RunManifest(std::string command);

  void flag(const std::string& name, nlohmann::ordered_json value);
  void seed(std::uint64_t seed) { seed_ = seed; }
  void input(const std::string& path, std::string_view content);
  void output(const std::string& path, std::string_view content);

  std::string serialize() const;

  /// `<output>.manifest.json`
  static std::string path_for(const std::string& output);

 private:
  std::string command_;
  nlohmann::ordered_json flags_ = nlohmann::ordered_json::object();
  std::optional<std::uint64_t> seed_;
  std::vector<std::pair<std::string, std::string>> inputs_;
  std::vector<std::pair<std::string, std::string>> outputs_;
};

}  // namespace alignkit::cli
