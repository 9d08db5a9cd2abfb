#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "hackbox/geometry.hpp"

namespace hackbox {

enum class TerrainKind : std::uint8_t {
    Solid,
    Floor,
    WallH,
    WallV,
    ClosedDoor,
    SecretDoor,
    OpenDoor,
    LockedDoor,
    Lava,
    Water,
    Ice,
    Tree,
    Cloud,
    Corridor,
    StairDown,
    StairUp,
    Sink,
    Fountain,
    Altar,
};

inline constexpr int kTerrainKindCount = 19;

using TerrainGrid = Grid<TerrainKind>;
using Mask = Grid<std::uint8_t>;

/// Character used for the kind inside MAP blocks and TERRAIN commands.
char map_char(TerrainKind kind);

/// Inverse of map_char; also accepts the classic aliases '}' / 'P' (water) and 'K' (sink).
std::optional<TerrainKind> terrain_from_map_char(char c);

/// Glyph the kind is drawn with in observations.
char display_char(TerrainKind kind);

/// 16-colour terminal palette index.
std::uint8_t display_color(TerrainKind kind);

std::string_view terrain_name(TerrainKind kind);
std::string_view terrain_description(TerrainKind kind);

/// Walkable for the agent without any special item. Lava is walkable (and lethal).
bool agent_enterable(TerrainKind kind);

/// Walkable for monsters.
bool monster_passable(TerrainKind kind);

/// Terrain a boulder may be pushed onto (water and lava are handled separately).
bool boulder_passable(TerrainKind kind);

/// Cells that block line of sight.
bool opaque(TerrainKind kind);

/// Cells a ray (wand zap) flies through.
bool ray_passable(TerrainKind kind);

/// Door-like cells forbid diagonal movement into or out of them.
bool is_doorway(TerrainKind kind);

bool is_wall_like(TerrainKind kind);

/// Terrain that can hold a monster, object or trap placement.
bool admits_entities(TerrainKind kind);

/// Terrain suitable for a random placement: plain floor-like ground.
bool is_open_ground(TerrainKind kind);

}  // namespace hackbox
