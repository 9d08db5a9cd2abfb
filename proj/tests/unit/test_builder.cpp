#include <doctest.h>

#include <algorithm>

#include "hackbox/dsl/parser.hpp"
#include "hackbox/gen/builder.hpp"
#include "hackbox/gen/compiler.hpp"
#include "test_util.hpp"

using namespace hackbox;
using namespace hackbox::gen;
using hackbox::testing::read_fixture;

namespace {

LevelBlueprint build(const LevelBuilder& b, std::uint64_t seed) { return compile(dsl::parse_document(b.get_des()), seed); }

Coord origin(const LevelBlueprint& bp) { return {bp.map_frame.x1, bp.map_frame.y1}; }

std::size_t named(const LevelBlueprint& bp, const std::string& name)
{
    return static_cast<std::size_t>(
        std::count_if(bp.placements.begin(), bp.placements.end(), [&](const Placement& p) { return p.name == name; }));
}

}  // namespace

TEST_CASE("skill room with items and a sink")
{
    auto b = LevelBuilder::empty(10, 10);
    b.add_object("apple", '%').add_object("dagger", ')').add_monster("goblin").add_trap("teleport").add_sink();
    b.fill_terrain("rect", 'L', 0, 0, 9, 9);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto bp = build(b, seed);
        const Coord o = origin(bp);
        CHECK(named(bp, "apple") == 1);
        CHECK(named(bp, "dagger") == 1);
        CHECK(named(bp, "goblin") == 1);
        CHECK(named(bp, "teleport") == 1);
        CHECK(named(bp, "sink") == 1);
        for (int i = 0; i < 10; ++i) {
            CHECK(bp.terrain[o + Coord{i, 0}] == TerrainKind::Lava);
            CHECK(bp.terrain[o + Coord{i, 9}] == TerrainKind::Lava);
            CHECK(bp.terrain[o + Coord{0, i}] == TerrainKind::Lava);
            CHECK(bp.terrain[o + Coord{9, i}] == TerrainKind::Lava);
        }
        CHECK(bp.terrain[o + Coord{5, 5}] != TerrainKind::Lava);
        for (const auto& p : bp.placements) CHECK(Rect{1, 1, 8, 8}.translated(o).contains(p.pos));
    }
}

TEST_CASE("labyrinth with a fixed minotaur")
{
    auto b = LevelBuilder::from_map(read_fixture("labyrinth.txt"));
    CHECK(b.width() == 20);
    CHECK(b.height() == 11);
    b.set_start_pos({9, 1}).add_goal_pos(Coord{14, 5}).add_monster("minotaur", Coord{19, 9}).add_object("death", '/');
    const auto bp = build(b, 3);
    const Coord o = origin(bp);
    REQUIRE(bp.start_pos.has_value());
    CHECK(*bp.start_pos == o + Coord{9, 1});
    const auto* mino = bp.find(PlacementKind::Monster, o + Coord{19, 9});
    REQUIRE(mino != nullptr);
    CHECK(mino->name == "minotaur");
    CHECK(bp.stairs.at(0).pos == o + Coord{14, 5});
    CHECK(named(bp, "wand of death") == 1);
}

TEST_CASE("small labyrinth with a sleeping minotaur")
{
    auto b = LevelBuilder::from_map(read_fixture("labyrinth.txt"));
    b.set_start_pos({9, 1}).add_object("death", '/').add_object("apple", std::nullopt, Coord{14, 5});
    b.add_monster("minotaur", Coord{14, 6}, {"asleep"});
    const auto bp = build(b, 0);
    const auto* mino = bp.find(PlacementKind::Monster, origin(bp) + Coord{14, 6});
    REQUIRE(mino != nullptr);
    CHECK(mino->asleep);
}

TEST_CASE("an empty builder emits a plain floor room")
{
    const auto b = LevelBuilder::empty(5, 5);
    const std::string des = b.get_des();
    CHECK(des == b.get_des());
    const auto doc = dsl::parse_document(des);
    REQUIRE(doc.levels.size() == 1);
    CHECK(std::holds_alternative<dsl::MazeType>(doc.levels[0].kind));
    const auto bp = compile(doc, 0);
    CHECK(std::count(bp.terrain.cells().begin(), bp.terrain.cells().end(), TerrainKind::Floor) == 25);
    CHECK(bp.placements.empty());
}

TEST_CASE("builder rejects coordinates outside the level")
{
    auto b = LevelBuilder::empty(5, 5);
    CHECK_THROWS_AS(b.add_sink(Coord{5, 0}), OutOfBounds);
    CHECK_THROWS_AS(b.set_start_pos({-1, 0}), OutOfBounds);
    CHECK_THROWS_AS(b.fill_terrain("fillrect", 'L', 0, 0, 0, 9), OutOfBounds);
    CHECK_THROWS_AS(b.fill_terrain("circle", 'L', 0, 0, 1, 1), std::invalid_argument);
}

TEST_CASE("randomized builder sequences always round-trip")
{
    Rng rng(2024);
    const char* monsters[] = {"goblin", "jackal", "lichen", "random", "newt"};
    const char* objects[] = {"apple", "dagger", "random", "skeleton key", "boulder"};
    const char* traps[] = {"teleport", "fire", "random"};
    for (int trial = 0; trial < 300; ++trial) {
        const int w = rng.range(3, 20);
        const int h = rng.range(3, 15);
        auto b = LevelBuilder::empty(w, h, rng.percent(50));
        std::vector<std::pair<Coord, std::string>> fixed;
        std::vector<Coord> used;
        auto fresh = [&]() -> std::optional<Coord> {
            if (rng.percent(50)) return std::nullopt;
            for (int i = 0; i < 20; ++i) {
                const Coord c{rng.range(0, w - 1), rng.range(0, h - 1)};
                if (std::find(used.begin(), used.end(), c) == used.end()) {
                    used.push_back(c);
                    return c;
                }
            }
            return std::nullopt;
        };
        const int n = rng.range(0, 6);
        for (int i = 0; i < n; ++i) {
            const auto place = fresh();
            switch (rng.range(0, 5)) {
            case 0: b.add_monster(monsters[rng.index(5)], place); break;
            case 1: b.add_object(objects[rng.index(5)], std::nullopt, place); break;
            case 2: b.add_trap(traps[rng.index(3)], place); break;
            case 3: b.add_sink(place); break;
            case 4: b.add_fountain(place); break;
            default: b.add_goal_pos(place); break;
            }
            if (place) fixed.emplace_back(*place, "");
        }
        const std::string des = b.get_des();
        REQUIRE_NOTHROW((void)dsl::parse_document(des));
        const auto bp = compile(dsl::parse_document(des), static_cast<std::uint64_t>(trial));
        const Coord o = origin(bp);
        for (const auto& [c, _] : fixed) {
            const bool found = std::any_of(bp.placements.begin(), bp.placements.end(),
                                           [&](const Placement& p) { return p.pos == o + c; });
            CHECK(found);
        }
        for (const auto& p : bp.placements) CHECK(bp.map_frame.contains(p.pos));
    }
}
