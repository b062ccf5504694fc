#include "recnet_cli/run.hpp"

#include <openssl/evp.h>

#include <ctime>
#include <memory>

#include <json.hpp>

#include "recnet/error.hpp"
#include "recnet/io.hpp"

namespace recnet::cli {

namespace fs = std::filesystem;

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256: digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xf];
  }
  return out;
}

std::string file_sha256(const fs::path& path) { return sha256_hex(read_file(path)); }

RunDirectory::RunDirectory(fs::path dir, bool force, bool record_timings)
    : dir_(std::move(dir)), record_timings_(record_timings) {
  if (fs::exists(dir_)) {
    if (!fs::is_directory(dir_)) {
      throw ValidationError("output path " + dir_.string() + " is not a directory");
    }
    if (!force && !fs::is_empty(dir_)) {
      throw ValidationError("output directory " + dir_.string() +
                            " is not empty; pass --force to overwrite");
    }
  }
  fs::create_directories(dir_);
}

void RunDirectory::write(const std::string& relative, std::string_view content) {
  write_file_atomic(dir_ / relative, content);
  outputs_[relative] = sha256_hex(content);
}

void RunDirectory::record_output(const fs::path& file) {
  const auto relative = fs::relative(file, dir_).generic_string();
  outputs_[relative] = file_sha256(file);
}

void RunDirectory::add_input(const std::string& role, const fs::path& file) {
  if (!fs::is_regular_file(file)) {
    throw ValidationError("input " + role + ": " + file.string() + " does not exist");
  }
  inputs_[role] = {file.filename().string(), file_sha256(file)};
}

void RunDirectory::stop(const std::string& stage, std::chrono::steady_clock::time_point start) {
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  timings_.emplace_back(stage, elapsed.count());
}

void RunDirectory::finish(const std::string& manifest_body_json) {
  auto manifest = nlohmann::json::parse(manifest_body_json);
  auto& inputs = manifest["inputs"] = nlohmann::json::object();
  for (const auto& [role, entry] : inputs_) {
    inputs[role] = {{"file", entry.first}, {"sha256", entry.second}};
  }
  auto& outputs = manifest["outputs"] = nlohmann::json::array();
  for (const auto& [relative, digest] : outputs_) {
    outputs.push_back({{"path", relative}, {"sha256", digest}});
  }
  if (record_timings_) {
    auto& timings = manifest["timings_seconds"] = nlohmann::json::object();
    for (const auto& [stage, seconds] : timings_) timings[stage] = seconds;
  }
  write_file_atomic(dir_ / "run_manifest.json", manifest.dump(2) + "\n");
}

fs::path default_run_dir(const std::string& command, std::string_view config_text) {
  const std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y%m%dT%H%M%SZ", &utc);
  return fs::path("runs") /
         (std::string(stamp) + "-" + command + "-" + sha256_hex(config_text).substr(0, 12));
}

}  // namespace recnet::cli
