#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hackbox/blueprint.hpp"
#include "hackbox/catalog.hpp"
#include "hackbox/rng.hpp"
#include "hackbox/sim/action.hpp"

namespace hackbox::sim {

struct EngineConfig {
    double open_chance = 0.8;
    double kick_chance = 0.5;
    double search_chance = 1.0 / 3.0;
    int agent_hp = 16;
    Dice unarmed{1, 6};
    int levitation_turns = 50;
    int ray_range = 20;
    /// Directional commands ask for a direction instead of using the facing.
    bool prompted = true;
    /// Start with the whole map remembered.
    bool mapped = false;
};

struct ObjectInstance {
    std::size_t kind = 0;
    int quantity = 1;
    std::string montype;

    friend bool operator==(const ObjectInstance&, const ObjectInstance&) = default;
};

struct FloorObject {
    Coord pos;
    ObjectInstance obj;

    friend bool operator==(const FloorObject&, const FloorObject&) = default;
};

struct InventoryItem {
    char letter = 'a';
    ObjectInstance obj;

    friend bool operator==(const InventoryItem&, const InventoryItem&) = default;
};

struct MonsterState {
    std::size_t kind = 0;
    std::string name;
    char cls = '?';
    Coord pos;
    int hp = 1;
    Dice damage;
    int speed = 12;
    bool asleep = false;
    bool hostile = true;
    bool instakill = false;
    bool passes_walls = false;

    friend bool operator==(const MonsterState&, const MonsterState&) = default;
};

struct TrapState {
    Coord pos;
    std::string name;
    bool hidden = false;

    friend bool operator==(const TrapState&, const TrapState&) = default;
};

struct AgentState {
    Coord pos;
    int hp = 16;
    int hp_max = 16;
    /// Sorted by letter order a..z, A..Z; gold sits under '$'.
    std::vector<InventoryItem> inventory;
    std::optional<char> wielded;
    std::vector<char> worn;
    int levitation_timer = 0;
    bool levitating = false;
    bool alive = true;
    Dir facing = Dir::E;

    [[nodiscard]] const InventoryItem* item(char letter) const;

    friend bool operator==(const AgentState&, const AgentState&) = default;
};

enum class PromptKind : std::uint8_t { Confirmation, ItemSelect, DirectionSelect };

struct PromptState {
    PromptKind kind = PromptKind::Confirmation;
    std::string question;
    ActionKind origin = ActionKind::Eat;
    std::vector<char> candidates;
    char item = 0;

    friend bool operator==(const PromptState&, const PromptState&) = default;
};

enum class EventKind : std::uint8_t {
    Ate,
    Wielded,
    Worn,
    PutOn,
    Quaffed,
    PickedUp,
    Killed,
    ReachedStair,
    ReachedFeature,
    ReachedCoord,
    Prayed,
    DoorOpened,
    Died,
    TrapTriggered,
    Zapped,
    Applied,
    Read,
    GoalsCovered,
};

std::string_view event_kind_name(EventKind kind);

/// name carries the object, monster, stair direction ("up"/"down"), feature
/// ("sink", "fountain", "altar") or death cause, depending on kind.
struct Event {
    EventKind kind = EventKind::ReachedCoord;
    std::string name;
    Coord pos;

    friend bool operator==(const Event&, const Event&) = default;
};

std::string to_string(const Event& e);

struct WorldState {
    const Catalog* catalog = nullptr;
    TerrainGrid terrain{kMapWidth, kMapHeight, TerrainKind::Solid};
    Mask lit{kMapWidth, kMapHeight, 0};
    std::vector<Coord> boulders;
    std::vector<MonsterState> monsters;
    std::vector<FloorObject> objects;
    std::vector<TrapState> traps;
    AgentState agent;
    std::optional<PromptState> prompt;
    long clock = 0;
    std::string message;
    std::optional<std::string> done;
    /// Unobstructed sight lines from the agent, ignoring light.
    Mask sight{kMapWidth, kMapHeight, 0};
    Mask visible{kMapWidth, kMapHeight, 0};
    Mask remembered{kMapWidth, kMapHeight, 0};
    Rng rng;
    EngineConfig config;

    [[nodiscard]] const MonsterState* monster_at(Coord c) const;
    [[nodiscard]] bool boulder_at(Coord c) const;
    [[nodiscard]] const TrapState* trap_at(Coord c) const;
    /// Objects at c, bottom first.
    [[nodiscard]] std::vector<const FloorObject*> objects_at(Coord c) const;
    [[nodiscard]] const ObjectKind& kind_of(const ObjectInstance& o) const { return catalog->objects()[o.kind]; }
};

struct StepResult {
    std::vector<Event> events;
    bool time_advanced = false;
    /// "NoSuchItem", "WrongCategory" or empty.
    std::string error;
};

class NoStartCell : public std::runtime_error {
public:
    NoStartCell() : std::runtime_error("no free cell for the agent") {}
};

class EpisodeAlreadyDone : public std::logic_error {
public:
    EpisodeAlreadyDone() : std::logic_error("step called after the episode ended") {}
};

WorldState reset(const LevelBlueprint& bp, std::uint64_t seed, const EngineConfig& config = {},
                 const Catalog& catalog = Catalog::builtin());

StepResult step(WorldState& state, const Action& action);

/// Put an item straight into the agent's inventory; returns its letter.
char give_item(WorldState& state, std::string_view name, int quantity = 1);

/// Recompute visibility from the agent and fold it into the remembered set.
void update_fov(WorldState& state);

/// Whether a monster standing at from can see the agent.
bool monster_sees(const WorldState& state, Coord from);

}  // namespace hackbox::sim
