#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace recnet {

// Writes `content` to `<path>.tmp` and renames it over `path`, so readers
// never observe a partially written file. Parent directories are created.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

}  // namespace recnet
