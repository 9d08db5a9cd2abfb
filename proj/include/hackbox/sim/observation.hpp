#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hackbox/sim/world.hpp"

namespace hackbox::sim {

inline constexpr int kStatsSize = 25;
inline constexpr int kMessageSize = 256;
inline constexpr int kInventorySlots = 55;
inline constexpr int kDefaultCrop = 9;

/// Every observation key, in canonical order.
inline constexpr std::array<std::string_view, 11> kObservationKeys{
    "chars",      "colors",  "ids",    "chars_crop", "colors_crop", "ids_crop", "stats",
    "message",    "screen_descriptions", "inv_letters", "inv_strs"};

class UnknownKey : public std::invalid_argument {
public:
    explicit UnknownKey(const std::string& key) : std::invalid_argument("unknown observation key: " + key), key_(key) {}
    [[nodiscard]] const std::string& key() const { return key_; }

private:
    std::string key_;
};

/// Indices into the stats vector.
enum StatSlot : int { kStatX, kStatY, kStatHp, kStatHpMax, kStatClock, kStatLevitating, kStatInventory };

/// Only the requested keys are filled in.
struct Observation {
    std::optional<Grid<std::uint8_t>> chars, colors;
    std::optional<Grid<std::uint16_t>> ids;
    std::optional<Grid<std::uint8_t>> chars_crop, colors_crop;
    std::optional<Grid<std::uint16_t>> ids_crop;
    std::optional<std::array<std::int64_t, kStatsSize>> stats;
    std::optional<std::array<std::uint8_t, kMessageSize>> message;
    std::optional<Grid<std::string>> screen_descriptions;
    std::optional<std::array<std::uint8_t, kInventorySlots>> inv_letters;
    std::optional<std::vector<std::string>> inv_strs;
};

/// Throws UnknownKey for a key outside kObservationKeys and
/// std::invalid_argument for an even or non-positive crop.
Observation observe(const WorldState& s, const std::set<std::string>& keys, int crop = kDefaultCrop);

struct Glyph {
    std::uint8_t ch = ' ';
    std::uint8_t color = 0;
    std::uint16_t id = 0;

    friend bool operator==(const Glyph&, const Glyph&) = default;
};

/// What the agent perceives at c; blank for never-seen cells and off-map coordinates.
Glyph glyph_at(const WorldState& s, Coord c);

/// Throws OutOfBounds (std::out_of_range) off the map.
std::string describe_cell(const WorldState& s, int x, int y);

/// Inventory line as shown in menus, e.g. "a dagger (weapon in hand)".
std::string inventory_string(const WorldState& s, const InventoryItem& it);

/// Message line, 21 map rows and a status line, with ANSI colours.
std::string render_ansi(const WorldState& s);

// Id space: 0 unseen, 1 agent, then terrain kinds, catalog monsters,
// catalog objects and trap kinds.
inline constexpr std::uint16_t kAgentId = 1;
inline constexpr std::uint16_t kTerrainIdBase = 2;
inline constexpr std::array<std::string_view, 3> kTrapNames{"teleport", "fire", "invisible"};

std::uint16_t terrain_id(TerrainKind k);
std::uint16_t monster_id(const Catalog& c, std::size_t kind);
std::uint16_t object_id(const Catalog& c, std::size_t kind);
std::uint16_t trap_id(const Catalog& c, std::string_view name);
/// Largest id in use for the catalog.
std::uint16_t max_id(const Catalog& c);

/// Tab-separated id table: id, kind, name, char, color.
std::string ids_tsv(const Catalog& c);

}  // namespace hackbox::sim
