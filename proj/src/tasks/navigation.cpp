#include <algorithm>
#include <array>
#include <cstdlib>

#include "common.hpp"
#include "hackbox/gen/builder.hpp"

namespace hackbox::tasks::detail {

namespace {

constexpr std::uint64_t kSalt = 0x6A09E667F3BCC909ULL;

/// k distinct cells drawn from pool.
std::vector<Coord> pick(std::vector<Coord> pool, std::size_t k, Rng& rng)
{
    rng.shuffle(std::span<Coord>(pool));
    pool.resize(std::min(k, pool.size()));
    return pool;
}

std::vector<Coord> interior_cells(const Rect& r)
{
    std::vector<Coord> out;
    for (int y = r.y1; y <= r.y2; ++y)
        for (int x = r.x1; x <= r.x2; ++x) out.push_back({x, y});
    return out;
}

std::string at(Coord c) { return coord(c); }

// ---- Room ---------------------------------------------------------------

std::string room_des(int n, bool fixed, bool dark, int monsters, int traps)
{
    auto b = gen::LevelBuilder::empty(n, n, !dark);
    if (fixed) {
        b.set_start_pos({0, 0});
        b.add_goal_pos(Coord{n - 1, n - 1});
    } else {
        b.add_goal_pos();
    }
    for (int i = 0; i < monsters; ++i) b.add_monster();
    for (int i = 0; i < traps; ++i) b.add_trap("teleport");
    return b.get_des();
}

// ---- Corridor -----------------------------------------------------------

std::string corridor_des(int rooms)
{
    std::string out;
    for (int i = 0; i < rooms; ++i) {
        out += "ROOM: \"ordinary\", lit, random, random, random {\n";
        if (i == 0) out += "  STAIR: random, up\n";
        if (i == rooms - 1) out += "  STAIR: random, down\n";
        out += "}\n";
    }
    out += "RANDOM_CORRIDORS\n";
    return out;
}

// ---- KeyRoom ------------------------------------------------------------

std::string keyroom_des(int size, bool fixed, bool dark, std::uint64_t seed)
{
    Rng rng(seed ^ kSalt);
    const int c = size >= 15 ? 3 : 1;
    const int margin = c + 2;
    Sketch sk(size + 2 * margin + 2, size + 2 * margin + 2);
    Rect room{margin + 1, margin + 1, margin + size, margin + size};
    const Dir side = fixed ? Dir::E : kCardinalDirs[rng.index(4)];
    const int t = fixed ? (size - c) / 2 : rng.range(0, size - c);
    const int k = fixed ? c / 2 : rng.range(0, c - 1);
    Rect chamber;
    Coord door;
    switch (side) {
    case Dir::E:
        chamber = {room.x2 + 2, room.y1 + t, room.x2 + 1 + c, room.y1 + t + c - 1};
        door = {room.x2 + 1, room.y1 + t + k};
        break;
    case Dir::W:
        chamber = {room.x1 - 1 - c, room.y1 + t, room.x1 - 2, room.y1 + t + c - 1};
        door = {room.x1 - 1, room.y1 + t + k};
        break;
    case Dir::S:
        chamber = {room.x1 + t, room.y2 + 2, room.x1 + t + c - 1, room.y2 + 1 + c};
        door = {room.x1 + t + k, room.y2 + 1};
        break;
    default:
        chamber = {room.x1 + t, room.y1 - 1 - c, room.x1 + t + c - 1, room.y1 - 2};
        door = {room.x1 + t + k, room.y1 - 1};
        break;
    }
    sk.room(chamber);
    sk.room(room);
    sk.set(door, '+');
    const Coord off = sk.trim();
    room = room.translated({-off.x, -off.y});
    chamber = chamber.translated({-off.x, -off.y});
    door = door - off;

    const Coord key = fixed ? Coord{room.x1, room.y2} : pick(interior_cells(room), 1, rng).front();
    const Coord stair = fixed ? Coord{chamber.x1 + c / 2, chamber.y1 + c / 2} : pick(interior_cells(chamber), 1, rng).front();
    const std::string start = fixed ? rect({room.x1, room.y1, room.x1, room.y1}) : rect(room);
    return maze_des(sk, !dark,
                    {"DOOR:locked," + at(door), "STAIR:" + at(stair) + ",down",
                     "OBJECT:('(',\"skeleton key\")," + at(key), "BRANCH:" + start + ",(0,0,0,0)"});
}

// ---- MazeWalk -----------------------------------------------------------

std::string mazewalk_des(int w, int h)
{
    Sketch sk(w, h);
    for (int x = 0; x < w; ++x) {
        sk.set({x, 0}, '-');
        sk.set({x, h - 1}, '-');
    }
    for (int y = 1; y < h - 1; ++y) {
        sk.set({0, y}, '|');
        sk.set({w - 1, y}, '|');
    }
    return maze_des(sk, true, {"MAZEWALK:(1,1),east", "STAIR:random,down"});
}

// ---- River --------------------------------------------------------------

std::string river_des(bool wide, bool lava, bool monsters, std::uint64_t seed)
{
    Rng rng(seed ^ kSalt);
    const Rect inner{1, 1, 18, 5};
    Sketch sk(20, 7);
    sk.room(inner);
    const int columns = wide ? 2 : 1;
    // One row always crosses over water, with a boulder lined up per column.
    const int ford = rng.range(inner.y1, inner.y2);
    for (int y = inner.y1; y <= inner.y2; ++y)
        for (int i = 0; i < columns; ++i) sk.set({8 + i, y}, lava && y != ford && rng.percent(35) ? 'L' : 'W');
    std::vector<Coord> boulders{{6, ford}};
    if (wide) boulders.push_back({4, ford});
    std::vector<Coord> spare;
    for (int y = inner.y1; y <= inner.y2; ++y)
        if (std::abs(y - ford) > 1)
            for (int x = 3; x <= 6; ++x) spare.push_back({x, y});
    for (Coord c : pick(spare, (wide ? 2 : 1) + (lava ? 1 : 0), rng)) boulders.push_back(c);
    std::vector<std::string> d;
    for (Coord c : boulders) d.push_back("OBJECT:('`',\"boulder\")," + at(c));
    const auto far = pick(interior_cells({11, 1, 18, 5}), 4, rng);
    d.push_back("STAIR:" + at(far[0]) + ",down");
    if (monsters)
        for (std::size_t i = 1; i < far.size(); ++i) d.push_back("MONSTER:random," + at(far[i]));
    d.push_back("BRANCH:(1,1,2,5),(0,0,0,0)");
    return maze_des(sk, true, d);
}

// ---- HideNSeek ----------------------------------------------------------

std::string hidenseek_des(int w, int h, bool lava)
{
    const std::string W = std::to_string(w - 1);
    const std::string H = std::to_string(h - 1);
    const std::string area = "(0,0," + W + "," + H + ")";
    std::string out = "MAZE: \"hidenseek\", ' '\nGEOMETRY:center,center\nMAP\n";
    for (int y = 0; y < h; ++y) out += std::string(static_cast<std::size_t>(w), '.') + "\n";
    out += "ENDMAP\n";
    out += "REGION:" + area + ",lit,\"ordinary\"\n";
    out += "REPLACE_TERRAIN:" + area + ", '.', 'C', 33%\n";
    out += "REPLACE_TERRAIN:" + area + ", '.', 'T', 25%\n";
    if (lava) out += "REPLACE_TERRAIN:" + area + ", '.', 'L', 10%\n";
    out += "TERRAIN:randline (0," + H + "),(" + W + ",0), 5, '.'\n";
    out += "TERRAIN:randline (0,0),(" + W + "," + H + "), 5, '.'\n";
    const int cx = w / 2;
    const int cy = h / 2;
    out += "$center = selection: fillrect (" + std::to_string(cx - 1) + "," + std::to_string(cy - 1) + "," +
           std::to_string(cx + 1) + "," + std::to_string(cy + 1) + ")\n";
    out += "$apple_location = rndcoord $center\n";
    out += "OBJECT: ('%', \"apple\"), $apple_location\n";
    out += "$monster = monster: { 'L','N','H','O','D','T' }\n";
    out += "SHUFFLE: $monster\n";
    out += "$place = { (" + W + "," + H + "),(0," + H + "),(" + W + ",0) }\n";
    out += "SHUFFLE: $place\n";
    out += "MONSTER: $monster[0], $place[0], hostile\n";
    out += "STAIR:$place[2],down\n";
    out += "BRANCH:(0,0,0,0),(1,1,1,1)\n";
    return out;
}

// ---- CorridorBattle -----------------------------------------------------

inline constexpr int kBattleRats = 8;

std::string corridor_battle_des(bool dark, std::uint64_t seed)
{
    Rng rng(seed ^ kSalt);
    Sketch sk(31, 7);
    const Rect west{1, 1, 5, 5};
    const Rect east{21, 1, 29, 5};
    sk.room(west);
    sk.room(east);
    for (int x = 7; x <= 19; ++x) sk.set({x, 3}, '#');
    sk.set({6, 3}, '.');
    sk.set({20, 3}, '.');
    auto cells = pick(interior_cells({23, 1, 29, 5}), kBattleRats + 1, rng);
    std::vector<std::string> d{"STAIR:" + at(cells[0]) + ",down"};
    for (int i = 1; i <= kBattleRats; ++i) d.push_back("MONSTER:('r',\"sewer rat\")," + at(cells[static_cast<std::size_t>(i)]));
    d.push_back("BRANCH:" + rect(west) + ",(0,0,0,0)");
    return maze_des(sk, !dark, d);
}

// ---- Memento ------------------------------------------------------------

inline constexpr std::array<const char*, 4> kMementoCues{"newt", "jackal", "lichen", "kobold"};

std::string memento_des(int forks, int corridor, std::uint64_t seed)
{
    Rng rng(seed ^ kSalt);
    const int top = 1;
    const int mid = top + forks - 1;
    const int spine = 4 + corridor;
    Sketch sk(spine + 6, top + 2 * forks);
    sk.fill({1, mid - 1, 3, mid + 1}, '.');
    sk.fill({4, mid, spine - 1, mid}, '.');
    sk.fill({spine, top, spine, top + 2 * forks - 2}, '.');
    for (int i = 0; i < forks; ++i) sk.fill({spine + 1, top + 2 * i, spine + 4, top + 2 * i}, '.');
    sk.wallify();
    const auto answer = static_cast<int>(rng.index(static_cast<std::size_t>(forks)));
    std::vector<std::string> d{
        "MONSTER:\"" + std::string(kMementoCues[static_cast<std::size_t>(answer)]) + "\",(1," + std::to_string(mid - 1) +
        "),asleep,peaceful"};
    for (int i = 0; i < forks; ++i) {
        const int row = top + 2 * i;
        if (i == answer) d.push_back("MONSTER:\"grid bug\"," + at({spine + 4, row}) + ",asleep");
        else d.push_back("TRAP:\"invisible\"," + at({spine + 1, row}));
    }
    d.push_back("BRANCH:(2," + std::to_string(mid) + ",3," + std::to_string(mid + 1) + "),(0,0,0,0)");
    return maze_des(sk, true, d);
}

reward::RewardConfig memento_reward()
{
    reward::EventListBuilder b;
    b.add_kill_event("grid bug", {1.0, false, false, true});
    b.add_trap_event("invisible", {-1.0, false, false, true});
    return b.flat();
}

// ---- MazeExplore --------------------------------------------------------

struct ExploreLayout {
    int left_nodes;
    int right_nodes;
    int row_nodes;
    int apples;
};

std::string maze_explore_des(const ExploreLayout& L, std::uint64_t seed)
{
    Rng rng(seed ^ kSalt);
    const int h = 2 * L.row_nodes + 1;
    const int a = 2 * L.left_nodes + 1;
    const int b = a + 4;
    const int c = b + 2 * L.right_nodes + 2;
    const int w = c + 4;
    Sketch sk(w, h);
    sk.fill({a, 1, b, h - 2}, '.');
    sk.fill({c, 1, c + 2, h - 2}, '.');
    auto odd_row = [&] { return 2 * rng.range(0, L.row_nodes - 1) + 1; };
    std::vector<std::string> d{
        "MAZEWALK:" + at({a - 1, odd_row()}) + ",west",
        "MAZEWALK:" + at({b + 1, odd_row()}) + ",east",
        "MAZEWALK:" + at({c - 1, odd_row()}) + ",west",
        "STAIR:" + at(pick(interior_cells({a, 1, b, h - 2}), 1, rng).front()) + ",down",
    };
    for (Coord p : pick(interior_cells({c + 2, 1, c + 2, h - 2}), static_cast<std::size_t>(L.apples), rng))
        d.push_back("OBJECT:('%',\"apple\")," + at(p));
    d.push_back("BRANCH:" + rect({1, 1, a - 2, h - 2}) + ",(0,0,0,0)");
    return maze_des(sk, true, d);
}

reward::RewardConfig maze_explore_reward()
{
    reward::EventListBuilder b;
    b.add_eat_event("apple", {0.5, false, false, false});
    b.add_location_event("staircase down", {1.0, false, false, true});
    return b.flat();
}

gen::Requirements reach_stairs()
{
    gen::Requirements r;
    r.pushes = false;
    return r;
}

}  // namespace

void register_navigation(std::vector<Entry>& out)
{
    for (int n : {5, 15}) {
        const std::string size = std::to_string(n) + "x" + std::to_string(n);
        const int steps = n == 5 ? 100 : 300;
        const int monsters = n == 5 ? 1 : 3;
        const int traps = n == 5 ? 1 : 15;
        struct Variant {
            const char* suffix;
            bool fixed, dark;
            int monsters, traps;
        };
        const Variant variants[] = {{"", true, false, 0, 0},          {"-Random", false, false, 0, 0},
                                    {"-Dark", false, true, 0, 0},     {"-Monster", false, false, monsters, 0},
                                    {"-Trap", false, false, 0, traps}, {"-Ultimate", false, true, monsters, traps}};
        for (const auto& v : variants) {
            const std::string id = "Room-" + size + v.suffix;
            out.push_back({id, [=] {
                               const std::string des = room_des(n, v.fixed, v.dark, v.monsters, v.traps);
                               EnvSpec s = navigation_spec(id, [des](std::uint64_t) { return des; }, steps);
                               s.requirements = reach_stairs();
                               return s;
                           }});
        }
    }
    for (int rooms : {2, 3, 5}) {
        const std::string id = "Corridor-R" + std::to_string(rooms);
        out.push_back({id, [=] {
                           const std::string des = corridor_des(rooms);
                           EnvSpec s = navigation_spec(id, [des](std::uint64_t) { return des; }, 1000);
                           s.requirements = reach_stairs();
                           return s;
                       }});
    }
    struct KeyVariant {
        const char* id;
        int size;
        bool fixed, dark;
    };
    for (const KeyVariant& v : {KeyVariant{"KeyRoom-Fixed-S5", 5, true, false}, KeyVariant{"KeyRoom-S5", 5, false, false},
                                KeyVariant{"KeyRoom-Dark-S5", 5, false, true}, KeyVariant{"KeyRoom-S15", 15, false, false},
                                KeyVariant{"KeyRoom-Dark-S15", 15, false, true}}) {
        out.push_back({v.id, [v] {
                           EnvSpec s = navigation_spec(
                               v.id, [v](std::uint64_t seed) { return keyroom_des(v.size, v.fixed, v.dark, seed); },
                               v.size == 5 ? 200 : 400);
                           s.actions.push_back(sim::Action::simple(sim::ActionKind::PickUp));
                           s.actions.push_back(sim::Action::simple(sim::ActionKind::Apply));
                           s.requirements = reach_stairs();
                           return s;
                       }});
    }
    struct MazeSize {
        int w, h, steps;
    };
    for (const MazeSize& m : {MazeSize{9, 9, 200}, MazeSize{15, 15, 500}, MazeSize{45, 19, 1000}}) {
        for (bool mapped : {false, true}) {
            const std::string id =
                "MazeWalk-" + std::to_string(m.w) + "x" + std::to_string(m.h) + (mapped ? "-Mapped" : "");
            out.push_back({id, [=] {
                               const std::string des = mazewalk_des(m.w, m.h);
                               EnvSpec s = navigation_spec(id, [des](std::uint64_t) { return des; }, m.steps);
                               s.engine.mapped = mapped;
                               s.requirements = reach_stairs();
                               return s;
                           }});
        }
    }
    struct RiverVariant {
        const char* id;
        bool wide, lava, monsters;
    };
    for (const RiverVariant& v :
         {RiverVariant{"River-Narrow", false, false, false}, RiverVariant{"River", true, false, false},
          RiverVariant{"River-Monster", true, false, true}, RiverVariant{"River-Lava", true, true, false},
          RiverVariant{"River-MonsterLava", true, true, true}}) {
        out.push_back({v.id, [v] {
                           EnvSpec s = navigation_spec(
                               v.id, [v](std::uint64_t seed) { return river_des(v.wide, v.lava, v.monsters, seed); }, 400);
                           if (!v.wide) s.requirements = gen::Requirements{};
                           return s;
                       }});
    }
    struct HideVariant {
        const char* id;
        int w, h;
        bool lava, mapped;
        int steps;
    };
    for (const HideVariant& v :
         {HideVariant{"HideNSeek", 11, 9, false, false, 200}, HideVariant{"HideNSeek-Mapped", 11, 9, false, true, 200},
          HideVariant{"HideNSeek-Lava", 11, 9, true, false, 200}, HideVariant{"HideNSeek-Big", 25, 15, false, false, 400}}) {
        out.push_back({v.id, [v] {
                           const std::string des = hidenseek_des(v.w, v.h, v.lava);
                           EnvSpec s = navigation_spec(v.id, [des](std::uint64_t) { return des; }, v.steps);
                           s.engine.mapped = v.mapped;
                           s.requirements = reach_stairs();
                           return s;
                       }});
    }
    for (bool dark : {false, true}) {
        const std::string id = dark ? "CorridorBattle-Dark" : "CorridorBattle";
        out.push_back({id, [=] {
                           EnvSpec s = navigation_spec(
                               id, [dark](std::uint64_t seed) { return corridor_battle_des(dark, seed); }, 400);
                           s.requirements = reach_stairs();
                           return s;
                       }});
    }
    struct MementoVariant {
        const char* id;
        int forks, corridor, steps;
    };
    for (const MementoVariant& v : {MementoVariant{"Memento-Short-F2", 2, 4, 100}, MementoVariant{"Memento-F2", 2, 16, 200},
                                    MementoVariant{"Memento-F4", 4, 16, 200}}) {
        out.push_back({v.id, [v] {
                           EnvSpec s = navigation_spec(
                               v.id, [v](std::uint64_t seed) { return memento_des(v.forks, v.corridor, seed); }, v.steps);
                           s.reward = memento_reward();
                           return s;
                       }});
    }
    struct ExploreVariant {
        const char* id;
        ExploreLayout layout;
        bool mapped;
        int steps;
    };
    const ExploreLayout easy{4, 4, 4, 2};
    const ExploreLayout hard{7, 9, 7, 3};
    for (const ExploreVariant& v :
         {ExploreVariant{"MazeExplore-Easy", easy, false, 500}, ExploreVariant{"MazeExplore-Hard", hard, false, 1000},
          ExploreVariant{"MazeExplore-Easy-Mapped", easy, true, 500},
          ExploreVariant{"MazeExplore-Hard-Mapped", hard, true, 1000}}) {
        out.push_back({v.id, [v] {
                           EnvSpec s = navigation_spec(
                               v.id, [v](std::uint64_t seed) { return maze_explore_des(v.layout, seed); }, v.steps);
                           s.actions.push_back(sim::Action::simple(sim::ActionKind::Eat));
                           s.reward = maze_explore_reward();
                           s.engine.mapped = v.mapped;
                           s.requirements = reach_stairs();
                           return s;
                       }});
    }
}

}  // namespace hackbox::tasks::detail
