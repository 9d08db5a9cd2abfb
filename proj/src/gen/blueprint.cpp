#include "hackbox/blueprint.hpp"

#include <algorithm>
#include <array>

namespace hackbox {

std::string_view placement_kind_name(PlacementKind kind)
{
    constexpr std::array<std::string_view, 4> names{"monster", "object", "trap", "feature"};
    return names[static_cast<std::size_t>(kind)];
}

std::size_t LevelBlueprint::count(PlacementKind kind) const
{
    return static_cast<std::size_t>(
        std::count_if(placements.begin(), placements.end(), [&](const Placement& p) { return p.kind == kind; }));
}

const Placement* LevelBlueprint::find(PlacementKind kind, Coord pos) const
{
    for (const auto& p : placements)
        if (p.kind == kind && p.pos == pos) return &p;
    return nullptr;
}

std::vector<std::string> render_terrain(const LevelBlueprint& bp)
{
    std::vector<std::string> rows;
    for (int y = 0; y < bp.terrain.height(); ++y) {
        std::string row;
        for (int x = 0; x < bp.terrain.width(); ++x) row += map_char(bp.terrain.at(x, y));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace hackbox
