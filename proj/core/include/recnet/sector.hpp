#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace recnet {

// The ten SIC divisions used to label POIs.
enum class Sector : unsigned char {
  kRetail,
  kFinance,
  kServices,
  kManufacturing,
  kTransport,
  kWholesale,
  kPublicAdministration,
  kAgriculture,
  kConstruction,
  kMining,
};

inline constexpr std::size_t kSectorCount = 10;

inline constexpr std::array<Sector, kSectorCount> kAllSectors = {
    Sector::kRetail,      Sector::kFinance,   Sector::kServices,
    Sector::kManufacturing, Sector::kTransport, Sector::kWholesale,
    Sector::kPublicAdministration, Sector::kAgriculture,
    Sector::kConstruction, Sector::kMining,
};

std::string_view to_string(Sector sector);
std::optional<Sector> parse_sector(std::string_view token);

constexpr std::size_t index_of(Sector sector) {
  return static_cast<std::size_t>(sector);
}

}  // namespace recnet
