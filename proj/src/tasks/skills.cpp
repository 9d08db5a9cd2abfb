#include <array>

#include "common.hpp"
#include "hackbox/gen/builder.hpp"

namespace hackbox::tasks::detail {

namespace {

constexpr std::uint64_t kSalt = 0xBB67AE8584CAA73BULL;
constexpr int kRoom = 5;

reward::RewardConfig any_event(sim::EventKind kind)
{
    reward::EventListBuilder b;
    b.add_event(reward::EventMatcher{kind, "", std::nullopt});
    return b.flat();
}

Coord random_cell(const Rect& r, Rng& rng) { return {rng.range(r.x1, r.x2), rng.range(r.y1, r.y2)}; }

// ---- Eat / Pray / Wear --------------------------------------------------

enum class Simple : std::uint8_t { Eat, Pray, Wear };

std::string simple_des(Simple kind, bool fixed, bool distract)
{
    auto b = gen::LevelBuilder::empty(kRoom, kRoom);
    const std::optional<Coord> spot = fixed ? std::optional<Coord>(Coord{kRoom - 1, kRoom - 1}) : std::nullopt;
    if (fixed) b.set_start_pos({0, 0});
    switch (kind) {
    case Simple::Eat: b.add_object("random", '%', spot); break;
    case Simple::Pray: b.add_altar(spot); break;
    case Simple::Wear: b.add_object("random", '[', spot); break;
    }
    if (distract) {
        b.add_object("random");
        b.add_monster("random");
    }
    return b.get_des();
}

reward::RewardConfig simple_reward(Simple kind)
{
    switch (kind) {
    case Simple::Eat: return any_event(sim::EventKind::Ate);
    case Simple::Pray: return any_event(sim::EventKind::Prayed);
    case Simple::Wear: break;
    }
    return any_event(sim::EventKind::Worn);
}

// ---- LockedDoor ---------------------------------------------------------

std::string locked_door_des(bool fixed, std::uint64_t seed)
{
    Rng rng(seed ^ kSalt);
    const Rect west{1, 1, 5, 5};
    const Rect east{7, 1, 9, 5};
    Sketch sk(11, 7);
    sk.room(west);
    sk.room(east);
    const Coord door{6, fixed ? 3 : rng.range(1, 5)};
    sk.set(door, '+');
    const Coord stair = fixed ? Coord{9, 3} : random_cell(east, rng);
    const std::string start = fixed ? "(1,3,1,3)" : rect(west);
    return maze_des(sk, true, {"DOOR:locked," + coord(door), "STAIR:" + coord(stair) + ",down", "BRANCH:" + start + ",(0,0,0,0)"});
}

// ---- LavaCross ----------------------------------------------------------

enum class LavaItems : std::uint8_t { Inventory, Floor, AnyLevitation, AnyCrossing };

inline constexpr std::array<const char*, 3> kLevitators{"potion of levitation", "ring of levitation", "levitation boots"};
inline constexpr std::array<const char*, 5> kCrossers{"potion of levitation", "ring of levitation", "levitation boots",
                                                       "wand of cold", "frost horn"};

std::string lava_cross_des(LavaItems items, const std::string& item, std::uint64_t seed)
{
    Rng rng(seed ^ kSalt);
    const Rect inner{1, 1, 11, 5};
    Sketch sk(13, 7);
    sk.room(inner);
    for (int y = inner.y1; y <= inner.y2; ++y) sk.set({6, y}, 'L');
    const Rect near{1, 1, 4, 5};
    std::vector<std::string> d{"STAIR:" + coord(random_cell({8, 1, 11, 5}, rng)) + ",down"};
    std::string placed = item;
    if (items == LavaItems::AnyLevitation) placed = kLevitators[rng.index(kLevitators.size())];
    if (items == LavaItems::AnyCrossing) placed = kCrossers[rng.index(kCrossers.size())];
    if (items != LavaItems::Inventory) d.push_back("OBJECT:\"" + placed + "\"," + coord(random_cell(near, rng)));
    d.push_back("BRANCH:" + rect(near) + ",(0,0,0,0)");
    return maze_des(sk, true, d);
}

// ---- Wand of death ------------------------------------------------------

std::string wod_easy_des()
{
    auto b = gen::LevelBuilder::empty(kRoom, kRoom);
    b.add_monster("minotaur", std::nullopt, {"asleep"});
    return b.get_des();
}

std::string wod_corridor_des(bool awake, std::uint64_t seed)
{
    Rng rng(seed ^ kSalt);
    const Rect west{1, 1, 5, 5};
    const Rect east{13, 1, 15, 5};
    Sketch sk(17, 7, ' ');
    sk.fill(west, '.');
    sk.fill(east, '.');
    sk.fill({6, 3, 12, 3}, '.');
    sk.wallify();
    std::vector<std::string> d{
        "OBJECT:('/',\"wand of death\")," + coord(random_cell(west, rng)),
        "STAIR:" + coord(random_cell(east, rng)) + ",down",
        std::string("MONSTER:\"minotaur\",(9,3),") + (awake ? "hostile" : "asleep"),
        "BRANCH:" + rect(west) + ",(0,0,0,0)",
    };
    return maze_des(sk, true, d);
}

constexpr int kProW = 31;
constexpr int kProH = 19;
constexpr Rect kProChamber{14, 8, 16, 10};
constexpr Coord kProGate{17, 9};

std::string wod_pro_des(std::uint64_t seed)
{
    Rng rng(seed ^ kSalt);
    Sketch sk(kProW, kProH);
    for (int x = 0; x < kProW; ++x) {
        sk.set({x, 0}, '-');
        sk.set({x, kProH - 1}, '-');
    }
    for (int y = 1; y < kProH - 1; ++y) {
        sk.set({0, y}, '|');
        sk.set({kProW - 1, y}, '|');
    }
    sk.room(kProChamber);
    std::vector<Coord> nodes;
    const Rect ring = kProChamber.expanded(1);
    for (int y = 1; y < kProH - 1; y += 2)
        for (int x = 1; x < kProW - 1; x += 2)
            if (!ring.contains({x, y}) && !(x == 1 && y == 1)) nodes.push_back({x, y});
    return maze_des(sk, true,
                    {"MAZEWALK:" + coord(kProGate) + ",east", "STAIR:" + coord({15, 9}) + ",down",
                     "OBJECT:('/',\"wand of death\")," + coord(nodes[rng.index(nodes.size())]),
                     "MONSTER:\"minotaur\"," + coord(kProGate) + ",asleep", "BRANCH:(1,1,1,1),(0,0,0,0)"});
}

gen::Requirements reach_stairs()
{
    gen::Requirements r;
    r.pushes = false;
    return r;
}

EnvSpec fixed_text(const std::string& id, std::string des, int max_steps)
{
    return skill_spec(id, [des = std::move(des)](std::uint64_t) { return des; }, max_steps);
}

}  // namespace

void register_skills(std::vector<Entry>& out)
{
    struct SimpleTask {
        const char* name;
        Simple kind;
    };
    for (const SimpleTask& t : {SimpleTask{"Eat", Simple::Eat}, SimpleTask{"Pray", Simple::Pray}, SimpleTask{"Wear", Simple::Wear}}) {
        for (const char* suffix : {"", "-Fixed", "-Distract"}) {
            const std::string id = std::string(t.name) + suffix;
            const bool fixed = std::string_view(suffix) == "-Fixed";
            const bool distract = std::string_view(suffix) == "-Distract";
            out.push_back({id, [=] {
                               EnvSpec s = fixed_text(id, simple_des(t.kind, fixed, distract), 100);
                               s.reward = simple_reward(t.kind);
                               return s;
                           }});
        }
    }
    for (bool random : {false, true}) {
        const std::string id = random ? "LockedDoor-Random" : "LockedDoor";
        out.push_back({id, [=] {
                           EnvSpec s = skill_spec(id, [random](std::uint64_t seed) { return locked_door_des(!random, seed); }, 100);
                           s.requirements = reach_stairs();
                           return s;
                       }});
    }
    struct LavaTask {
        const char* id;
        LavaItems items;
        const char* item;
    };
    for (const LavaTask& t : {LavaTask{"LavaCross-Levitate-Ring-Inv", LavaItems::Inventory, "ring of levitation"},
                              LavaTask{"LavaCross-Levitate-Potion-Inv", LavaItems::Inventory, "potion of levitation"},
                              LavaTask{"LavaCross-Levitate-Ring-Pickup", LavaItems::Floor, "ring of levitation"},
                              LavaTask{"LavaCross-Levitate-Potion-PickUp", LavaItems::Floor, "potion of levitation"},
                              LavaTask{"LavaCross-Levitate", LavaItems::AnyLevitation, ""},
                              LavaTask{"LavaCross", LavaItems::AnyCrossing, ""}}) {
        out.push_back({t.id, [t] {
                           EnvSpec s = skill_spec(
                               t.id, [t](std::uint64_t seed) { return lava_cross_des(t.items, t.item, seed); }, 200);
                           if (t.items == LavaItems::Inventory) s.inventory = {t.item};
                           return s;
                       }});
    }
    out.push_back({"WoD-Easy", [] {
                       EnvSpec s = fixed_text("WoD-Easy", wod_easy_des(), 100);
                       s.inventory = {"wand of death"};
                       s.reward = any_event(sim::EventKind::Killed);
                       return s;
                   }});
    for (bool awake : {false, true}) {
        const std::string id = awake ? "WoD-Hard" : "WoD-Medium";
        out.push_back({id, [=] {
                           EnvSpec s = skill_spec(id, [awake](std::uint64_t seed) { return wod_corridor_des(awake, seed); }, 200);
                           s.requirements = reach_stairs();
                           return s;
                       }});
    }
    out.push_back({"WoD-Pro", [] {
                       EnvSpec s = skill_spec("WoD-Pro", wod_pro_des, 1000);
                       s.requirements = reach_stairs();
                       return s;
                   }});
}

}  // namespace hackbox::tasks::detail
