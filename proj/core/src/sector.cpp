#include "recnet/sector.hpp"

namespace recnet {

namespace {

constexpr std::array<std::string_view, kSectorCount> kNames = {
    "retail",    "finance",   "services",
    "manufacturing", "transport", "wholesale",
    "public_administration", "agriculture",
    "construction", "mining",
};

}  // namespace

std::string_view to_string(Sector sector) { return kNames[index_of(sector)]; }

std::optional<Sector> parse_sector(std::string_view token) {
  for (std::size_t i = 0; i < kSectorCount; ++i) {
    if (kNames[i] == token) return kAllSectors[i];
  }
  return std::nullopt;
}

}  // namespace recnet
