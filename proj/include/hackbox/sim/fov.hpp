#pragma once

#include "hackbox/geometry.hpp"
#include "hackbox/terrain.hpp"

namespace hackbox::sim {

/// Cells in unobstructed line of sight from origin, by symmetric shadowcasting.
/// Opaque cells bounding the view are included.
Mask line_of_sight(const TerrainGrid& terrain, Coord origin);

/// Line of sight restricted by light: lit cells anywhere in sight, unlit
/// cells only next to the origin.
Mask field_of_view(const TerrainGrid& terrain, const Mask& lit, Coord origin);

}  // namespace hackbox::sim
