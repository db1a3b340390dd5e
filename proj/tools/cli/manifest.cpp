#include "manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <memory>
#include <stdexcept>

#include "commands.hpp"

namespace alignkit::cli {

std::string sha256_hex(std::string_view data) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

RunManifest::RunManifest(std::string command) : command_(std::move(command)) {}

void RunManifest::flag(const std::string& name, nlohmann::ordered_json value) {
  flags_[name] = std::move(value);
}

void RunManifest::input(const std::string& path, std::string_view content) {
  inputs_.emplace_back(path, sha256_hex(content));
}

void RunManifest::output(const std::string& path, std::string_view content) {
  outputs_.emplace_back(path, sha256_hex(content));
}

std::string RunManifest::serialize() const {
  using Json = nlohmann::ordered_json;
  auto files = [](const auto& list) {
    Json arr = Json::array();
    for (const auto& [path, hash] : list) arr.push_back({{"path", path}, {"sha256", hash}});
    return arr;
  };
  Json out = {{"schema", "alignkit.manifest/1"}, {"command", command_}, {"version", kVersion}};
  out["flags"] = flags_;
  out["seed"] = seed_ ? Json(*seed_) : Json(nullptr);
  out["inputs"] = files(inputs_);
  out["outputs"] = files(outputs_);
  return out.dump(2) + "\n";
}

std::string RunManifest::path_for(const std::string& output) { return output + ".manifest.json"; }

}  // namespace alignkit::cli
