#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace alignkit::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Environment variable naming the default configuration directory, searched
/// for compatibility.json and toy_embeddings.json.
inline constexpr const char* kConfigDirEnv = "ALIGNKIT_CONFIG_DIR";

enum ExitCode : int { kSuccess = 0, kUsageError = 1, kDataError = 2 };

/// Bad flags or flag combinations detected after parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Runs the tool. `args` excludes the program name. Never throws; failures
/// are reported on `err` and mapped to an ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace alignkit::cli
