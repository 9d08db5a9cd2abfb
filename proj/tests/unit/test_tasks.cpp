#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "hackbox/dsl/parser.hpp"
#include "hackbox/env.hpp"
#include "hackbox/gen/compiler.hpp"
#include "hackbox/rng.hpp"
#include "hackbox/tasks.hpp"
#include "oracles.hpp"

using namespace hackbox;
using namespace hackbox::tasks;
using sim::Action;

namespace {

std::vector<std::string> expand(const std::string& stem, const std::vector<std::string>& a,
                                const std::vector<std::string>& b = {""})
{
    std::vector<std::string> out;
    for (const auto& x : a)
        for (const auto& y : b) out.push_back(stem + x + y);
    return out;
}

std::vector<std::string> expected_ids()
{
    std::vector<std::vector<std::string>> groups{
        expand("Room-", {"5x5", "15x15"}, {"", "-Random", "-Dark", "-Monster", "-Trap", "-Ultimate"}),
        expand("Corridor-", {"R2", "R3", "R5"}),
        expand("KeyRoom-", {"Fixed-S5", "S5", "Dark-S5", "S15", "Dark-S15"}),
        expand("MazeWalk-", {"9x9", "15x15", "45x19"}, {"", "-Mapped"}),
        {"River-Narrow", "River", "River-Monster", "River-Lava", "River-MonsterLava"},
        expand("HideNSeek", {"", "-Mapped", "-Lava", "-Big"}),
        expand("CorridorBattle", {"", "-Dark"}),
        expand("Memento-", {"Short-F2", "F2", "F4"}),
        expand("MazeExplore-", {"Easy", "Hard"}, {"", "-Mapped"}),
        expand("Eat", {"", "-Fixed", "-Distract"}),
        expand("Pray", {"", "-Fixed", "-Distract"}),
        expand("Wear", {"", "-Fixed", "-Distract"}),
        expand("LockedDoor", {"", "-Random"}),
        {"LavaCross-Levitate-Ring-Inv", "LavaCross-Levitate-Potion-Inv", "LavaCross-Levitate-Ring-Pickup",
         "LavaCross-Levitate-Potion-PickUp", "LavaCross-Levitate", "LavaCross"},
        expand("WoD-", {"Easy", "Medium", "Hard", "Pro"}),
        expand("MultiRoom-", {"N2", "N4"}, {"", "-Monster", "-Locked", "-Lava", "-Extreme"}),
        expand("Boxoban-", {"Unfiltered", "Medium", "Hard"}),
    };
    std::vector<std::string> out;
    for (const auto& g : groups) out.insert(out.end(), g.begin(), g.end());
    return out;
}

Coord stair_of(const LevelBlueprint& bp)
{
    for (const auto& s : bp.stairs)
        if (s.direction == StairDirection::Down) return s.pos;
    FAIL("level has no down staircase");
    return {};
}

Dir move_dir(int m)
{
    const auto [dx, dy] = oracle::kMoves[static_cast<std::size_t>(m)];
    for (Dir d : kAllDirs)
        if (delta(d).x == dx && delta(d).y == dy) return d;
    return Dir::N;
}

std::set<std::pair<int, int>> monster_cells(const sim::WorldState& s)
{
    std::set<std::pair<int, int>> out;
    for (const auto& m : s.monsters) out.insert({m.pos.x, m.pos.y});
    return out;
}

std::size_t count_terrain(const LevelBlueprint& bp, TerrainKind k)
{
    std::size_t n = 0;
    for (int y = 0; y < bp.terrain.height(); ++y)
        for (int x = 0; x < bp.terrain.width(); ++x) n += bp.terrain.at(x, y) == k;
    return n;
}

std::size_t count_named(const LevelBlueprint& bp, PlacementKind kind, const std::string& name)
{
    return static_cast<std::size_t>(std::count_if(bp.placements.begin(), bp.placements.end(),
                                                  [&](const Placement& p) { return p.kind == kind && p.name == name; }));
}

std::string grid_text(const sim::Observation& o)
{
    std::string out;
    for (int y = 0; y < o.chars->height(); ++y)
        for (int x = 0; x < o.chars->width(); ++x) out += static_cast<char>(o.chars->at(x, y));
    return out;
}

const char* kTenByTen =
    "; 7\n"
    "##########\n"
    "#@ $ .   #\n"
    "#        #\n"
    "#  $.    #\n"
    "#  *     #\n"
    "#   $   .#\n"
    "#        #\n"
    "#        #\n"
    "#        #\n"
    "##########\n";

}  // namespace

TEST_CASE("registry lists every task id exactly once")
{
    const auto& ids = list_tasks();
    const auto expected = expected_ids();
    CHECK(ids.size() == expected.size());
    CHECK(std::set<std::string>(ids.begin(), ids.end()).size() == ids.size());
    for (const auto& id : expected) CHECK_MESSAGE(std::find(ids.begin(), ids.end(), id) != ids.end(), id);
    CHECK_THROWS_AS(make_task("Room-7x7"), UnknownTask);
}

TEST_CASE("every task resets for seeds 0..99")
{
    for (const auto& id : list_tasks()) {
        const EnvSpec spec = make_task(id);
        REQUIRE_FALSE(spec.actions.empty());
        REQUIRE(spec.max_steps > 0);
        int ok = 0;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            Env env(spec);
            const sim::Observation o = env.reset(seed);
            const auto& s = env.state();
            const bool good = s.agent.alive && !s.done && o.chars && o.chars_crop &&
                              oracle::walk_ok(s.terrain[s.agent.pos]) && !s.monster_at(s.agent.pos) &&
                              !s.boulder_at(s.agent.pos);
            ok += good ? 1 : 0;
        }
        CHECK_MESSAGE(ok == 100, id);
    }
}

TEST_CASE("constructed tasks are solvable for 100 seeds by the search oracle")
{
    const std::vector<std::string> walk_tasks{
        "Room-5x5",        "Room-5x5-Random",    "Room-5x5-Dark",     "Room-5x5-Monster",  "Room-5x5-Trap",
        "Room-5x5-Ultimate", "Room-15x15",       "Room-15x15-Ultimate", "KeyRoom-Fixed-S5", "KeyRoom-S5",
        "KeyRoom-Dark-S5", "KeyRoom-S15",       "KeyRoom-Dark-S15",  "MazeWalk-9x9",      "MazeWalk-15x15",
        "MazeWalk-45x19",  "MultiRoom-N2",      "MultiRoom-N4",      "MultiRoom-N2-Monster", "MultiRoom-N4-Monster",
        "Corridor-R2",     "Corridor-R5",       "MazeExplore-Easy",  "MazeExplore-Hard",  "CorridorBattle"};
    for (const auto& id : walk_tasks) {
        const EnvSpec spec = make_task(id);
        int solved = 0;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const LevelBlueprint bp = sample_level(spec, seed);
            REQUIRE(bp.start_pos);
            solved += oracle::walk(bp, *bp.start_pos, stair_of(bp)).has_value() ? 1 : 0;
        }
        CHECK_MESSAGE(solved == 100, id);
    }
    const EnvSpec river = make_task("River-Narrow");
    int solved = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const LevelBlueprint bp = sample_level(river, seed);
        solved += oracle::push_reachable(bp, *bp.start_pos, stair_of(bp)) == std::optional<bool>(true) ? 1 : 0;
    }
    CHECK(solved == 100);
}

TEST_CASE("River-Narrow needs a push: walking alone never reaches the stairs")
{
    const EnvSpec river = make_task("River-Narrow");
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const LevelBlueprint bp = sample_level(river, seed);
        CHECK_FALSE(oracle::walk(bp, *bp.start_pos, stair_of(bp)));
    }
}

TEST_CASE("wide rivers always have a ford row with boulders lined up")
{
    for (const char* id : {"River", "River-Monster", "River-Lava", "River-MonsterLava"}) {
        const EnvSpec spec = make_task(id);
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const LevelBlueprint bp = sample_level(spec, seed);
            const auto boulders = oracle::boulder_cells(bp);
            std::vector<int> water_cols;
            for (int x = 0; x < bp.terrain.width(); ++x) {
                bool river = false;
                for (int y = 0; y < bp.terrain.height(); ++y)
                    river = river || bp.terrain.at(x, y) == TerrainKind::Water || bp.terrain.at(x, y) == TerrainKind::Lava;
                if (river) water_cols.push_back(x);
            }
            REQUIRE(water_cols.size() == 2);
            const int w = water_cols.front();
            bool ford = false;
            for (int y = 0; y < bp.terrain.height(); ++y) {
                const bool wet = bp.terrain.at(w, y) == TerrainKind::Water && bp.terrain.at(w + 1, y) == TerrainKind::Water;
                ford = ford || (wet && boulders.count({w - 2, y}) && boulders.count({w - 4, y}) &&
                                !boulders.count({w - 1, y}) && !boulders.count({w - 3, y}));
            }
            CHECK_MESSAGE(ford, id << " seed " << seed);
        }
    }
}

TEST_CASE("fixed and random room variants")
{
    const EnvSpec fixed = make_task("Room-5x5");
    const EnvSpec random = make_task("Room-5x5-Random");
    std::set<std::pair<int, int>> fixed_starts, random_starts, random_stairs;
    const LevelBlueprint first = sample_level(fixed, 0);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const LevelBlueprint a = sample_level(fixed, seed);
        fixed_starts.insert({a.start_pos->x, a.start_pos->y});
        CHECK(stair_of(a) == stair_of(first));
        const LevelBlueprint b = sample_level(random, seed);
        random_starts.insert({b.start_pos->x, b.start_pos->y});
        random_stairs.insert({stair_of(b).x, stair_of(b).y});
    }
    CHECK(fixed_starts.size() == 1);
    CHECK(random_starts.size() > 5);
    CHECK(random_stairs.size() > 5);

    const LevelBlueprint dark = sample_level(make_task("Room-5x5-Dark"), 3);
    CHECK_FALSE(dark.lit[stair_of(dark)]);
    CHECK(sample_level(make_task("Room-15x15-Trap"), 3).count(PlacementKind::Trap) == 15);
    CHECK(sample_level(make_task("Room-15x15-Monster"), 3).count(PlacementKind::Monster) == 3);
}

TEST_CASE("walking the oracle path through Room-5x5 ends with +1")
{
    Env env(make_task("Room-5x5"));
    env.reset(11);
    const auto path = oracle::walk(env.level(), *env.level().start_pos, stair_of(env.level()));
    REQUIRE(path);
    Transition t;
    for (int m : *path) t = env.step(Action::move(move_dir(m)));
    CHECK(t.done);
    CHECK(t.end_reason == "success");
    CHECK(t.reward == doctest::Approx(1.0));
    CHECK(env.episode_return() == doctest::Approx(1.0));
}

TEST_CASE("KeyRoom: locked door, key in the room, stairs behind the door")
{
    for (const char* id : {"KeyRoom-Fixed-S5", "KeyRoom-S5", "KeyRoom-S15"}) {
        const EnvSpec spec = make_task(id);
        CHECK(std::count(spec.actions.begin(), spec.actions.end(), Action::simple(sim::ActionKind::PickUp)) == 1);
        CHECK(std::count(spec.actions.begin(), spec.actions.end(), Action::simple(sim::ActionKind::Apply)) == 1);
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            const LevelBlueprint bp = sample_level(spec, seed);
            CHECK(count_terrain(bp, TerrainKind::LockedDoor) == 1);
            CHECK(count_named(bp, PlacementKind::Object, "skeleton key") == 1);
            CHECK_FALSE(oracle::walk(bp, *bp.start_pos, stair_of(bp), {}, false));
            const auto key = std::find_if(bp.placements.begin(), bp.placements.end(),
                                          [](const Placement& p) { return p.name == "skeleton key"; });
            CHECK(oracle::walk(bp, *bp.start_pos, key->pos, {}, false));
        }
    }
}

TEST_CASE("KeyRoom-Fixed-S5 scripted: fetch key, unlock, walk to stairs")
{
    Env env(make_task("KeyRoom-Fixed-S5"));
    env.reset(0);
    const LevelBlueprint& bp = env.level();
    const auto key = std::find_if(bp.placements.begin(), bp.placements.end(),
                                  [](const Placement& p) { return p.name == "skeleton key"; })->pos;
    Coord door{};
    for (int y = 0; y < bp.terrain.height(); ++y)
        for (int x = 0; x < bp.terrain.width(); ++x)
            if (bp.terrain.at(x, y) == TerrainKind::LockedDoor) door = {x, y};
    auto go = [&](Coord to) {
        const auto path = oracle::walk(bp, env.state().agent.pos, to, monster_cells(env.state()), false);
        REQUIRE(path);
        for (int m : *path) env.step(Action::move(move_dir(m)));
    };
    go(key);
    env.step(Action::simple(sim::ActionKind::PickUp));
    REQUIRE(env.state().agent.inventory.size() == 1);
    const Coord before = door - Coord{1, 0};
    go(before);
    env.step(Action::move(Dir::E));
    CHECK(env.state().terrain[door] == TerrainKind::LockedDoor);
    env.step(Action::simple(sim::ActionKind::Apply));
    CHECK(env.state().terrain[door] == TerrainKind::ClosedDoor);
    Transition t;
    for (int i = 0; i < 50 && !env.done(); ++i) {
        LevelBlueprint now = bp;
        now.terrain = env.state().terrain;
        const auto path = oracle::walk(now, env.state().agent.pos, stair_of(bp));
        REQUIRE(path);
        t = env.step(Action::move(move_dir(path->front())));
    }
    CHECK(t.done);
    CHECK(t.end_reason == "success");
}

TEST_CASE("MazeWalk mapped variants differ only in the remembered map")
{
    const EnvSpec plain = make_task("MazeWalk-15x15");
    const EnvSpec mapped = make_task("MazeWalk-15x15-Mapped");
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Env a(plain), b(mapped);
        a.reset(seed);
        b.reset(seed);
        CHECK(a.level() == b.level());
        std::size_t known_a = 0, known_b = 0;
        for (int y = 0; y < kMapHeight; ++y)
            for (int x = 0; x < kMapWidth; ++x) {
                known_a += a.state().remembered.at(x, y) != 0;
                known_b += b.state().remembered.at(x, y) != 0;
            }
        CHECK(known_b > known_a);
        Rng rng(seed);
        for (int i = 0; i < 200 && !a.done(); ++i) {
            const std::size_t act = rng.index(a.spec().actions.size());
            const Transition ta = a.step(act);
            const Transition tb = b.step(act);
            CHECK(ta.reward == tb.reward);
            CHECK(ta.done == tb.done);
            CHECK(a.state().agent == b.state().agent);
            CHECK(a.state().clock == b.state().clock);
        }
    }
}

TEST_CASE("Memento: cue matches the fork with the grid bug; wrong forks are trapped")
{
    const std::vector<std::string> cues{"newt", "jackal", "lichen", "kobold"};
    for (const auto& [id, forks] : {std::pair{"Memento-Short-F2", 2}, std::pair{"Memento-F2", 2}, std::pair{"Memento-F4", 4}}) {
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            const LevelBlueprint bp = sample_level(make_task(id), seed);
            const auto bug = std::find_if(bp.placements.begin(), bp.placements.end(),
                                          [](const Placement& p) { return p.name == "grid bug"; });
            REQUIRE(bug != bp.placements.end());
            CHECK(bp.count(PlacementKind::Trap) == static_cast<std::size_t>(forks - 1));
            std::vector<int> fork_rows;
            for (const auto& p : bp.placements)
                if (p.kind == PlacementKind::Trap || p.name == "grid bug") fork_rows.push_back(p.pos.y);
            std::sort(fork_rows.begin(), fork_rows.end());
            const auto index = std::find(fork_rows.begin(), fork_rows.end(), bug->pos.y) - fork_rows.begin();
            const auto cue = std::find_if(bp.placements.begin(), bp.placements.end(), [&](const Placement& p) {
                return p.kind == PlacementKind::Monster && p.name != "grid bug";
            });
            REQUIRE(cue != bp.placements.end());
            CHECK(cue->name == cues[static_cast<std::size_t>(index)]);
            CHECK(cue->asleep);
        }
    }
}

TEST_CASE("Memento: stepping into a wrong fork ends the episode with -1")
{
    Env env(make_task("Memento-Short-F2"));
    env.reset(5);
    const LevelBlueprint& bp = env.level();
    const auto trap = std::find_if(bp.placements.begin(), bp.placements.end(),
                                   [](const Placement& p) { return p.kind == PlacementKind::Trap; });
    REQUIRE(trap != bp.placements.end());
    const auto path = oracle::walk(bp, *bp.start_pos, trap->pos, monster_cells(env.state()));
    REQUIRE(path);
    Transition t;
    for (int m : *path) t = env.step(Action::move(move_dir(m)));
    CHECK(t.done);
    CHECK(t.reward == doctest::Approx(-1.0));
}

TEST_CASE("MultiRoom structure per variant")
{
    auto doors = [](const LevelBlueprint& bp) {
        return count_terrain(bp, TerrainKind::ClosedDoor) + count_terrain(bp, TerrainKind::LockedDoor) +
               count_terrain(bp, TerrainKind::OpenDoor);
    };
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const LevelBlueprint n2 = sample_level(make_task("MultiRoom-N2"), seed);
        CHECK(doors(n2) == 1);
        CHECK(n2.count(PlacementKind::Monster) == 0);
        const LevelBlueprint n4 = sample_level(make_task("MultiRoom-N4"), seed);
        CHECK(doors(n4) == 3);
        const LevelBlueprint locked = sample_level(make_task("MultiRoom-N4-Locked"), seed);
        CHECK(count_terrain(locked, TerrainKind::LockedDoor) == 3);
        const LevelBlueprint lava = sample_level(make_task("MultiRoom-N2-Lava"), seed);
        CHECK(count_terrain(lava, TerrainKind::WallH) + count_terrain(lava, TerrainKind::WallV) == 0);
        CHECK(count_terrain(lava, TerrainKind::Lava) > 0);
        const LevelBlueprint monster = sample_level(make_task("MultiRoom-N4-Monster"), seed);
        CHECK(monster.count(PlacementKind::Monster) == 4);
        const LevelBlueprint extreme = sample_level(make_task("MultiRoom-N4-Extreme"), seed);
        CHECK(count_terrain(extreme, TerrainKind::LockedDoor) == 3);
        CHECK(count_terrain(extreme, TerrainKind::Lava) > 0);
        CHECK(extreme.count(PlacementKind::Monster) == 4);
    }
    const EnvSpec locked = make_task("MultiRoom-N2-Locked");
    CHECK(std::count(locked.actions.begin(), locked.actions.end(), Action::simple(sim::ActionKind::Kick)) == 1);
    CHECK_THROWS_AS(gen_multiroom(0, 5, {}, 0), std::invalid_argument);
}

TEST_CASE("gen_multiroom is a pure function of its seed")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        CHECK(gen_multiroom(4, 5, MultiRoomVariant::extreme(), seed) == gen_multiroom(4, 5, MultiRoomVariant::extreme(), seed));
    }
    CHECK(gen_multiroom(4, 5, {}, 1) != gen_multiroom(4, 5, {}, 2));
}

TEST_CASE("skill tasks: inventories and prompts")
{
    Env ring(make_task("LavaCross-Levitate-Ring-Inv"));
    ring.reset(0);
    REQUIRE(ring.state().agent.inventory.size() == 1);
    CHECK(ring.state().kind_of(ring.state().agent.inventory[0].obj).name == "ring of levitation");
    Env wod(make_task("WoD-Easy"));
    wod.reset(0);
    REQUIRE(wod.state().agent.inventory.size() == 1);
    CHECK(wod.state().kind_of(wod.state().agent.inventory[0].obj).name == "wand of death");
    CHECK(make_task("Eat").engine.prompted);
    CHECK_FALSE(make_task("Room-5x5").engine.prompted);
    const EnvSpec eat = make_task("Eat");
    CHECK(std::count(eat.obs_keys.begin(), eat.obs_keys.end(), "message") == 1);
}

TEST_CASE("LavaCross potion scripted: quaff, float over the lava, reach the stairs")
{
    Env env(make_task("LavaCross-Levitate-Potion-Inv"));
    env.reset(4);
    env.step(Action::simple(sim::ActionKind::Quaff));
    env.step(Action::select('a'));
    REQUIRE(env.state().agent.levitating);
    LevelBlueprint open = env.level();
    for (int y = 0; y < open.terrain.height(); ++y)
        for (int x = 0; x < open.terrain.width(); ++x)
            if (open.terrain.at(x, y) == TerrainKind::Lava) open.terrain[{x, y}] = TerrainKind::Floor;
    const auto path = oracle::walk(open, env.state().agent.pos, stair_of(open));
    REQUIRE(path);
    Transition t;
    for (int m : *path) t = env.step(Action::move(move_dir(m)));
    CHECK(env.state().agent.alive);
    CHECK(t.done);
    CHECK(t.end_reason == "success");
}

TEST_CASE("LavaCross without an item: walking into lava kills")
{
    Env env(make_task("LavaCross-Levitate-Potion-PickUp"));
    env.reset(2);
    Transition t;
    for (int i = 0; i < 20 && !env.done(); ++i) t = env.step(Action::move(Dir::E));
    CHECK(t.done);
    CHECK(t.end_reason == "death");
    CHECK(t.reward == 0.0);
}

TEST_CASE("WoD-Pro: start, wand and gated centre are consistent")
{
    const EnvSpec spec = make_task("WoD-Pro");
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const LevelBlueprint bp = sample_level(spec, seed);
        const auto wand = std::find_if(bp.placements.begin(), bp.placements.end(),
                                       [](const Placement& p) { return p.name == "wand of death"; });
        REQUIRE(wand != bp.placements.end());
        const auto mino = std::find_if(bp.placements.begin(), bp.placements.end(),
                                       [](const Placement& p) { return p.name == "minotaur"; });
        REQUIRE(mino != bp.placements.end());
        const std::set<std::pair<int, int>> gate{{mino->pos.x, mino->pos.y}};
        CHECK(oracle::walk(bp, *bp.start_pos, wand->pos, gate));
        CHECK_FALSE(oracle::walk(bp, *bp.start_pos, stair_of(bp), gate));
        CHECK(oracle::walk(bp, *bp.start_pos, stair_of(bp)));
    }
}

TEST_CASE("boxoban parsing")
{
    const auto levels = parse_boxoban(kTenByTen);
    REQUIRE(levels.size() == 1);
    CHECK(levels[0].index == 7);
    const LevelBlueprint bp = load_boxoban(kTenByTen).front();
    CHECK(count_named(bp, PlacementKind::Object, "boulder") == 4);
    CHECK(count_terrain(bp, TerrainKind::Fountain) == 4);
    REQUIRE(bp.start_pos);
    CHECK(*bp.start_pos - Coord{bp.map_frame.x1, bp.map_frame.y1} == Coord{1, 1});

    auto error_of = [](const std::string& text) -> std::pair<int, std::string> {
        try {
            parse_boxoban(text);
        } catch (const MalformedLevel& e) {
            return {e.index(), e.reason()};
        }
        return {-1, ""};
    };
    std::string short_level = kTenByTen;
    short_level.erase(short_level.rfind("##########"));
    CHECK(error_of(short_level).first == 7);
    CHECK(error_of(short_level).second.find("rows") != std::string::npos);
    std::string bad_char = kTenByTen;
    bad_char[bad_char.find('@') + 1] = 'X';
    CHECK(error_of(bad_char).second.find("unknown cell") != std::string::npos);
    std::string two_players = kTenByTen;
    two_players[two_players.find("#        #") + 1] = '@';
    CHECK(error_of(two_players).second.find("player") != std::string::npos);
    std::string mismatch = kTenByTen;
    mismatch[mismatch.find('.')] = ' ';
    CHECK(error_of(mismatch).second.find("goals") != std::string::npos);
    CHECK(error_of("##########\n").second.find("header") != std::string::npos);
    CHECK(error_of("; x\n").second.find("header") != std::string::npos);
    CHECK(parse_boxoban(std::string(kTenByTen) + "\n" + kTenByTen).size() == 2);
}

TEST_CASE("bundled boxoban corpus is well formed")
{
    for (const char* split : {"unfiltered", "medium", "hard"}) {
        const auto& levels = boxoban_corpus(split);
        CHECK(levels.size() == 200);
        for (const auto& lv : levels) {
            int boxes = 0;
            for (const auto& r : lv.rows) boxes += static_cast<int>(std::count(r.begin(), r.end(), '$') + std::count(r.begin(), r.end(), '*'));
            CHECK(boxes == 4);
        }
    }
    CHECK_THROWS_AS(boxoban_corpus("easy"), std::invalid_argument);
}

TEST_CASE("boxoban transitions match the Sokoban oracle state for state")
{
    const auto& levels = boxoban_corpus("unfiltered");
    const EnvSpec spec = make_task("Boxoban-Unfiltered");
    const std::array<std::pair<Dir, std::pair<int, int>>, 4> moves{
        {{Dir::N, {0, -1}}, {Dir::E, {1, 0}}, {Dir::S, {0, 1}}, {Dir::W, {-1, 0}}}};
    Rng rng(99);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Env env(spec);
        env.reset(seed);
        const Coord origin{env.level().map_frame.x1, env.level().map_frame.y1};
        oracle::Sokoban ref(levels[seed].rows);
        for (int i = 0; i < 30 && !env.done(); ++i) {
            const auto& [dir, d] = moves[rng.index(4)];
            env.step(Action::move(dir));
            ref.move(d.first, d.second);
            const Coord agent = env.state().agent.pos - origin;
            REQUIRE(std::pair{agent.x, agent.y} == ref.player);
            std::set<std::pair<int, int>> boulders;
            for (Coord b : env.state().boulders) boulders.insert({b.x - origin.x, b.y - origin.y});
            REQUIRE(boulders == ref.boxes);
        }
    }
}

TEST_CASE("boxoban: covering the last goal pays +1 and ends the episode")
{
    const std::string one =
        "; 0\n"
        "##########\n"
        "#@$.     #\n"
        "#  *     #\n"
        "#        #\n"
        "#        #\n"
        "#        #\n"
        "#        #\n"
        "#        #\n"
        "#        #\n"
        "##########\n";
    Overrides o;
    o.des = boxoban_des(parse_boxoban(one).front());
    Env env(make_task("Boxoban-Medium", o));
    env.reset(0);
    const Transition t = env.step(Action::move(Dir::E));
    CHECK(t.done);
    CHECK(t.end_reason == "success");
    CHECK(t.reward == doctest::Approx(1.0));
}

TEST_CASE("overrides")
{
    Overrides o;
    o.max_steps = 3;
    Env env(make_task("Room-15x15", o));
    env.reset(0);
    Transition t;
    for (int i = 0; i < 3; ++i) t = env.step(Action::move(Dir::N));
    CHECK(t.done);
    CHECK(t.end_reason == "timeout");
    CHECK_THROWS_AS(env.step(Action::move(Dir::N)), sim::EpisodeAlreadyDone);

    Overrides des;
    des.des = "MAZE: \"x\", ' '\nMAP\n...\nENDMAP\nSTAIR:(2,0),down\nBRANCH:(0,0,0,0),(0,0,0,0)\n";
    const EnvSpec custom = make_task("MazeWalk-45x19", des);
    CHECK_FALSE(custom.requirements);
    Env small(custom);
    small.reset(1);
    small.step(Action::move(Dir::E));
    CHECK(small.step(Action::move(Dir::E)).reward == doctest::Approx(1.0));

    Overrides keys;
    keys.obs_keys = std::vector<std::string>{"chars_crop"};
    keys.crop = 5;
    Env cropped(make_task("Room-5x5", keys));
    const sim::Observation obs = cropped.reset(0);
    CHECK_FALSE(obs.chars);
    REQUIRE(obs.chars_crop);
    CHECK(obs.chars_crop->width() == 5);

    Overrides bad_key;
    bad_key.obs_keys = std::vector<std::string>{"pixels"};
    CHECK_THROWS_AS(make_task("Room-5x5", bad_key), sim::UnknownKey);
    Overrides bad_crop;
    bad_crop.crop = 4;
    CHECK_THROWS_AS(make_task("Room-5x5", bad_crop), std::invalid_argument);
    Overrides bad_steps;
    bad_steps.max_steps = 0;
    CHECK_THROWS_AS(make_task("Room-5x5", bad_steps), std::invalid_argument);

    reward::EventListBuilder b;
    b.add_location_event("staircase down", {5.0, false, true, false});
    Overrides rw;
    rw.reward = b.flat();
    Env paid(make_task("Room-5x5", rw));
    paid.reset(0);
    const auto path = oracle::walk(paid.level(), *paid.level().start_pos, stair_of(paid.level()));
    for (int m : *path) t = paid.step(Action::move(move_dir(m)));
    CHECK(t.reward == doctest::Approx(5.0));
}

TEST_CASE("env rejects illegal actions and stepping before reset")
{
    Env env(make_task("Room-5x5"));
    CHECK_THROWS_AS(env.step(std::size_t{0}), NotReset);
    env.reset(0);
    CHECK_THROWS_AS(env.step(std::size_t{8}), IllegalAction);
    CHECK_THROWS_AS(env.step(Action::simple(sim::ActionKind::Eat)), IllegalAction);
    CHECK_NOTHROW(env.step(std::size_t{0}));
}

TEST_CASE("episodes are reproducible from (task, seed, actions)")
{
    Rng pick(7);
    for (int trial = 0; trial < 10; ++trial) {
        const auto& ids = list_tasks();
        const std::string id = ids[pick.index(ids.size())];
        const std::uint64_t seed = pick.next() % 1000;
        std::vector<std::size_t> actions;
        const EnvSpec spec = make_task(id);
        for (int i = 0; i < 100; ++i) actions.push_back(pick.index(spec.actions.size()));
        auto run = [&] {
            Env env(spec);
            std::vector<std::string> trace{grid_text(env.reset(seed))};
            for (std::size_t a : actions) {
                if (env.done()) break;
                const Transition t = env.step(a);
                trace.push_back(grid_text(t.obs) + std::to_string(t.reward) + t.end_reason);
            }
            return trace;
        };
        CHECK_MESSAGE(run() == run(), id);
    }
}

TEST_CASE("sample_level gives up after the resample budget")
{
    EnvSpec spec = make_task("Room-5x5");
    spec.des_source = [](std::uint64_t) {
        return std::string("MAZE: \"x\", ' '\nMAP\n.|.\nENDMAP\nSTAIR:(2,0),down\nBRANCH:(0,0,0,0),(0,0,0,0)\n");
    };
    CHECK_THROWS_AS(sample_level(spec, 0), GenerationFailed);
}
