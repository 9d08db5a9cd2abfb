#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <vector>

#include "hackbox/rng.hpp"
#include "hackbox/sim/fov.hpp"

using namespace hackbox;
using namespace hackbox::sim;

namespace {

TerrainGrid random_map(Rng& rng, int w, int h, int wall_percent)
{
    TerrainGrid g(w, h, TerrainKind::Floor);
    const TerrainKind blockers[] = {TerrainKind::WallV, TerrainKind::Tree, TerrainKind::Cloud, TerrainKind::ClosedDoor};
    for (auto& c : g.cells())
        if (rng.percent(wall_percent)) c = blockers[rng.index(4)];
    return g;
}

// Centre-line model: the segment between the centres of a and b, sampled
// on every intermediate row (or column, for steep lines). Where it passes
// exactly between two cells the permissive reading needs both opaque to
// block, the strict reading either one. Shadowcasting must lie between.
bool centre_line_clear(const TerrainGrid& g, Coord a, Coord b, bool strict)
{
    const int dx = b.x - a.x;
    const int dy = b.y - a.y;
    const bool x_major = std::abs(dx) >= std::abs(dy);
    const int depth = x_major ? std::abs(dx) : std::abs(dy);
    const int side = x_major ? dy : dx;
    const int sx = dx < 0 ? -1 : 1;
    const int sy = dy < 0 ? -1 : 1;
    auto blocked = [&](int d, long col) {
        const Coord c = x_major ? Coord{a.x + sx * d, a.y + static_cast<int>(col)}
                                : Coord{a.x + static_cast<int>(col), a.y + sy * d};
        return !g.contains(c) || opaque(g[c]);
    };
    for (int d = 1; d < depth; ++d) {
        const long twice = 2L * side * d;
        if (twice % depth == 0 && (twice / depth) % 2 != 0) {
            const long low = (twice / depth - 1) / 2;
            const bool lo = blocked(d, low);
            const bool hi = blocked(d, low + 1);
            if (strict ? (lo || hi) : (lo && hi)) return false;
        } else if (blocked(d, std::lround(static_cast<double>(side) * d / depth))) {
            return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("field of view is symmetric between floor cells")
{
    Rng rng(7);
    for (int map = 0; map < 100; ++map) {
        const int w = rng.range(5, 20);
        const int h = rng.range(5, 12);
        const TerrainGrid g = random_map(rng, w, h, 25);
        std::vector<Mask> fov;
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) fov.push_back(line_of_sight(g, {x, y}));
        for (int i = 0; i < w * h; ++i) {
            const Coord a{i % w, i / w};
            if (opaque(g[a])) continue;
            for (int j = 0; j < w * h; ++j) {
                const Coord b{j % w, j / w};
                if (opaque(g[b])) continue;
                REQUIRE(fov[static_cast<std::size_t>(i)][b] == fov[static_cast<std::size_t>(j)][a]);
            }
        }
    }
}

TEST_CASE("field of view lies between the strict and permissive centre-line oracles")
{
    Rng rng(11);
    int checked = 0;
    int ambiguous = 0;
    for (int map = 0; map < 100; ++map) {
        const int w = rng.range(5, 25);
        const int h = rng.range(5, 15);
        const TerrainGrid g = random_map(rng, w, h, 20);
        for (int k = 0; k < 5; ++k) {
            const Coord a{rng.range(0, w - 1), rng.range(0, h - 1)};
            if (opaque(g[a])) continue;
            const Mask m = line_of_sight(g, a);
            for (int y = 0; y < h; ++y)
                for (int x = 0; x < w; ++x) {
                    const Coord b{x, y};
                    if (opaque(g[b])) continue;
                    ++checked;
                    const bool strict = centre_line_clear(g, a, b, true);
                    const bool loose = centre_line_clear(g, a, b, false);
                    ambiguous += strict != loose;
                    if (strict) REQUIRE(m[b] == 1);
                    if (!loose) REQUIRE(m[b] == 0);
                }
        }
    }
    CHECK(checked > 10000);
    CHECK(ambiguous < checked / 10);
}

TEST_CASE("walls bound the view and open floor is fully visible")
{
    TerrainGrid g(9, 5, TerrainKind::Floor);
    const Mask all = line_of_sight(g, {4, 2});
    for (auto v : all.cells()) CHECK(v == 1);

    for (int y = 0; y < 5; ++y) g.at(6, y) = TerrainKind::WallV;
    const Mask m = line_of_sight(g, {4, 2});
    for (int y = 0; y < 5; ++y) {
        CHECK(m.at(6, y) == 1);
        CHECK(m.at(7, y) == 0);
        CHECK(m.at(8, y) == 0);
    }
    Mask dark(9, 5, 0);
    const Mask f = field_of_view(g, dark, {4, 2});
    int count = 0;
    for (auto v : f.cells()) count += v;
    CHECK(count == 9);
}
