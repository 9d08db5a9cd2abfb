#include "hackbox/terrain.hpp"

#include <array>

namespace hackbox {

namespace {

struct TerrainInfo {
    char map;
    char display;
    std::uint8_t color;
    std::string_view name;
    std::string_view description;
    bool agent_enterable;
    bool monster_passable;
    bool boulder_passable;
    bool opaque;
};

// Colours follow the usual curses palette: 1 red, 2 green, 3 brown, 4 blue,
// 6 cyan, 7 gray, 15 white.
constexpr std::array<TerrainInfo, kTerrainKindCount> kInfo{{
    {' ', ' ', 0, "solid", "stone", false, false, false, true},
    {'.', '.', 7, "floor", "floor", true, true, true, false},
    {'-', '-', 7, "wall_h", "wall", false, false, false, true},
    {'|', '|', 7, "wall_v", "wall", false, false, false, true},
    {'+', '+', 3, "closed_door", "closed door", true, false, false, true},
    {'S', '-', 7, "secret_door", "wall", false, false, false, true},
    {'o', '|', 3, "open_door", "open door", true, true, false, false},
    {'x', '+', 3, "locked_door", "closed door", false, false, false, true},
    {'L', '}', 1, "lava", "molten lava", true, false, false, false},
    {'W', '}', 4, "water", "water", false, false, false, false},
    {'I', '.', 6, "ice", "ice", true, true, true, false},
    {'T', '#', 2, "tree", "tree", false, false, false, true},
    {'C', '#', 15, "cloud", "cloud", true, true, true, true},
    {'#', '#', 7, "corridor", "corridor", true, true, true, false},
    {'>', '>', 7, "stair_down", "staircase down", true, true, true, false},
    {'<', '<', 7, "stair_up", "staircase up", true, true, true, false},
    {'K', '#', 7, "sink", "sink", true, true, true, false},
    {'{', '{', 4, "fountain", "fountain", true, true, true, false},
    {'_', '_', 7, "altar", "altar", true, true, true, false},
}};

const TerrainInfo& info(TerrainKind k) { return kInfo[static_cast<std::size_t>(k)]; }

}  // namespace

char map_char(TerrainKind kind) { return info(kind).map; }

std::optional<TerrainKind> terrain_from_map_char(char c)
{
    switch (c) {
    case '}':
    case 'P': return TerrainKind::Water;
    default: break;
    }
    for (int i = 0; i < kTerrainKindCount; ++i)
        if (kInfo[static_cast<std::size_t>(i)].map == c) return static_cast<TerrainKind>(i);
    return std::nullopt;
}

char display_char(TerrainKind kind) { return info(kind).display; }
std::uint8_t display_color(TerrainKind kind) { return info(kind).color; }
std::string_view terrain_name(TerrainKind kind) { return info(kind).name; }
std::string_view terrain_description(TerrainKind kind) { return info(kind).description; }
bool agent_enterable(TerrainKind kind) { return info(kind).agent_enterable; }
bool monster_passable(TerrainKind kind) { return info(kind).monster_passable; }
bool boulder_passable(TerrainKind kind) { return info(kind).boulder_passable; }
bool opaque(TerrainKind kind) { return info(kind).opaque; }

bool ray_passable(TerrainKind kind)
{
    switch (kind) {
    case TerrainKind::Solid:
    case TerrainKind::WallH:
    case TerrainKind::WallV:
    case TerrainKind::SecretDoor:
    case TerrainKind::ClosedDoor:
    case TerrainKind::LockedDoor:
    case TerrainKind::Tree: return false;
    default: return true;
    }
}

bool is_doorway(TerrainKind kind)
{
    return kind == TerrainKind::OpenDoor || kind == TerrainKind::ClosedDoor || kind == TerrainKind::LockedDoor;
}

bool is_wall_like(TerrainKind kind)
{
    return kind == TerrainKind::WallH || kind == TerrainKind::WallV || kind == TerrainKind::SecretDoor;
}

bool admits_entities(TerrainKind kind)
{
    return kind != TerrainKind::Lava && kind != TerrainKind::Water && info(kind).monster_passable;
}

bool is_open_ground(TerrainKind kind)
{
    return kind == TerrainKind::Floor || kind == TerrainKind::Corridor || kind == TerrainKind::Ice;
}

}  // namespace hackbox
