#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace recnet::cli {

// Lowercase hex SHA-256 of a byte string / of a file's contents.
std::string sha256_hex(std::string_view bytes);
std::string file_sha256(const std::filesystem::path& path);

// Output directory for one command invocation. Every file goes through
// write() (atomic rename) or record_output(), and finish() emits
// run_manifest.json listing them with their digests.
class RunDirectory {
 public:
  // Throws ValidationError when `dir` already holds files and `force` is off.
  RunDirectory(std::filesystem::path dir, bool force, bool record_timings);

  const std::filesystem::path& path() const { return dir_; }

  void write(const std::string& relative, std::string_view content);
  // For files written by library code directly into the directory.
  void record_output(const std::filesystem::path& file);

  // Digest an input under a role name; only the file name is recorded so
  // manifests do not depend on where the run tree lives.
  void add_input(const std::string& role, const std::filesystem::path& file);

  template <class Fn>
  auto timed(const std::string& stage, Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    if constexpr (std::is_void_v<decltype(fn())>) {
      fn();
      stop(stage, start);
    } else {
      auto result = fn();
      stop(stage, start);
      return result;
    }
  }

  // `body` is a JSON object serialized by the caller (command, config, ...);
  // inputs, outputs and optional timings are merged in.
  void finish(const std::string& manifest_body_json);

 private:
  void stop(const std::string& stage, std::chrono::steady_clock::time_point start);

  std::filesystem::path dir_;
  bool record_timings_;
  std::map<std::string, std::pair<std::string, std::string>> inputs_;  // role -> (name, digest)
  std::map<std::string, std::string> outputs_;                         // relative -> digest
  std::vector<std::pair<std::string, double>> timings_;
};

// runs/<UTC timestamp>-<command>-<12 hex of the config digest>
std::filesystem::path default_run_dir(const std::string& command, std::string_view config_text);

}  // namespace recnet::cli
