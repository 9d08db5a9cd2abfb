#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hackbox/geometry.hpp"
#include "hackbox/terrain.hpp"

namespace hackbox {

enum class PlacementKind : std::uint8_t { Monster, Object, Trap, Feature };

std::string_view placement_kind_name(PlacementKind kind);

struct Placement {
    PlacementKind kind = PlacementKind::Object;
    std::string name;
    char cls = '?';
    Coord pos;
    bool asleep = false;
    bool hostile = true;
    int quantity = 1;
    std::string montype;

    friend bool operator==(const Placement&, const Placement&) = default;
};

enum class StairDirection : std::uint8_t { Up, Down };

struct StairPlacement {
    Coord pos;
    StairDirection direction = StairDirection::Down;

    friend bool operator==(const StairPlacement&, const StairPlacement&) = default;
};

/// A concrete level: one draw from the distribution a des program describes.
struct LevelBlueprint {
    std::string name;
    int width = kMapWidth;
    int height = kMapHeight;
    TerrainGrid terrain{kMapWidth, kMapHeight, TerrainKind::Solid};
    Mask lit{kMapWidth, kMapHeight, 0};
    std::vector<Placement> placements;
    std::optional<Coord> start_pos;
    std::vector<StairPlacement> stairs;
    /// Canvas rectangle the MAP block landed on (the whole canvas when there is none).
    Rect map_frame = kCanvas;
    /// Interiors of top-level rooms, in declaration order.
    std::vector<Rect> rooms;

    [[nodiscard]] std::size_t count(PlacementKind kind) const;
    [[nodiscard]] const Placement* find(PlacementKind kind, Coord pos) const;

    friend bool operator==(const LevelBlueprint&, const LevelBlueprint&) = default;
};

/// Terrain characters as a list of rows, for debugging and summaries.
std::vector<std::string> render_terrain(const LevelBlueprint& bp);

}  // namespace hackbox
