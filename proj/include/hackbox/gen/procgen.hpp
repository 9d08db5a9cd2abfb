#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "hackbox/geometry.hpp"
#include "hackbox/rng.hpp"
#include "hackbox/terrain.hpp"

namespace hackbox::gen {

/// Sorted, duplicate-free set of cells.
using Selection = std::vector<Coord>;

void normalize(Selection& sel);

/// Bresenham segment, both endpoints included.
Selection select_line(Coord a, Coord b);

/// Filled rectangle clipped to bounds.
Selection select_fillrect(const Rect& r, const Rect& bounds);

/// Rectangle outline clipped to bounds.
Selection select_rect(const Rect& r, const Rect& bounds);

/// Midpoint-displacement random line. Result is 8-connected and holds both ends.
Selection select_randline(Coord a, Coord b, int roughness, Rng& rng, const Rect& bounds);

/// Keep each cell independently with probability percent/100.
Selection select_filter(const Selection& sel, int percent, Rng& rng);

/// Replace `from` by `to` in rect cells with probability percent/100 each.
void replace_terrain(TerrainGrid& grid, const Rect& rect, TerrainKind from, TerrainKind to, int percent, Rng& rng);

class RegionTooSmall : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Carve a perfect maze of floor into the solid cells of region. Lattice nodes
/// sit at odd offsets from the region origin. An off-lattice entry is carved and
/// joined to the lattice by one step in `first_step`. Walls touching the maze
/// become WallH/WallV. Returns the carved cells.
Selection mazewalk(TerrainGrid& grid, const Rect& region, Coord entry, Dir first_step, Rng& rng);

/// A placed room. `walls` is the interior grown by one.
struct PlacedRoom {
    Rect interior;
    bool lit = false;
    std::optional<int> parent;

    [[nodiscard]] Rect walls() const { return interior.expanded(1); }
    friend bool operator==(const PlacedRoom&, const PlacedRoom&) = default;
};

struct RoomRequest {
    std::optional<Coord> pos;  ///< sector on the 5x5 grid, 1-based
    std::optional<std::pair<std::string, std::string>> align;
    std::optional<Coord> size;  ///< interior width, height
};

class PlacementFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConnectFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kPlacementAttempts = 1000;

/// Pick an interior rectangle for a top-level room that keeps a gap of at
/// least one cell to every room in `existing`. Throws PlacementFailure.
Rect place_room(const RoomRequest& req, const std::vector<PlacedRoom>& existing, Rng& rng);

/// Carve walls and floor for a room.
void carve_room(TerrainGrid& grid, const Rect& interior);

/// Dig '#' corridors so that every room in `rooms` (top-level ones) is reachable.
/// Doors are doorless openings or open doors. Throws ConnectFailure.
void random_corridors(TerrainGrid& grid, const std::vector<PlacedRoom>& rooms, Rng& rng);

/// Cells reachable from `from` by 8-way agent moves (doorway diagonals excluded).
Mask flood_fill(const TerrainGrid& grid, Coord from);

}  // namespace hackbox::gen
