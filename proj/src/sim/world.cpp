#include "hackbox/sim/world.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <limits>

#include "hackbox/sim/fov.hpp"

namespace hackbox::sim {

namespace {

constexpr std::string_view kLetters = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";

int letter_rank(char c)
{
    if (c == '$') return -1;
    const auto i = kLetters.find(c);
    return i == std::string_view::npos ? 1000 : static_cast<int>(i);
}

std::string with_article(std::string_view name)
{
    const bool vowel = !name.empty() && std::string_view("aeiou").find(name.front()) != std::string_view::npos;
    return (vowel ? "an " : "a ") + std::string(name);
}

int roll(Rng& rng, const Dice& d) { return d.count <= 0 ? 0 : rng.dice(d.count, d.sides); }

bool diagonal_blocked(const TerrainGrid& t, Coord from, Coord to)
{
    return from.x != to.x && from.y != to.y && (is_doorway(t[from]) || is_doorway(t[to]));
}

Coord offset(Coord c, Dir d, int k = 1)
{
    const Coord dd = delta(d);
    return {c.x + dd.x * k, c.y + dd.y * k};
}

class Turn {
public:
    Turn(WorldState& s, StepResult& r) : s_(s), r_(r) {}

    void act(const Action& a)
    {
        if (s_.prompt) answer(a);
        else command(a);
    }

    void tick()
    {
        ++s_.clock;
        AgentState& ag = s_.agent;
        if (ag.levitation_timer > 0 && --ag.levitation_timer == 0) refresh_levitation();
    }

    // Monster phase.
    void monsters()
    {
        std::optional<Grid<int>> dist;
        for (std::size_t i = 0; i < s_.monsters.size() && s_.agent.alive; ++i) {
            MonsterState& m = s_.monsters[i];
            const Coord agent = s_.agent.pos;
            const bool adjacent = chebyshev(m.pos, agent) == 1;
            if (m.asleep) {
                if (adjacent) m.asleep = false;
                continue;
            }
            if (!m.hostile) continue;
            if (adjacent && !diagonal_blocked(s_.terrain, m.pos, agent)) {
                attack_agent(m);
                continue;
            }
            if (m.speed == 0) continue;
            if (monster_sees(s_, m.pos)) {
                if (!dist) dist = distances();
                if ((*dist)[m.pos] != kFar) {
                    chase(m, *dist);
                    continue;
                }
            }
            wander(m);
        }
    }

private:
    static constexpr int kFar = std::numeric_limits<int>::max();

    // ---- prompts ------------------------------------------------------

    void open_prompt(PromptState p)
    {
        s_.message = p.question;
        s_.prompt = std::move(p);
        if (s_.config.prompted) return;
        // Without prompt actions every question takes its default answer.
        while (s_.prompt && !r_.time_advanced && r_.error.empty()) {
            const PromptState& q = *s_.prompt;
            switch (q.kind) {
            case PromptKind::Confirmation: answer(Action::confirm(true)); break;
            case PromptKind::ItemSelect: answer(Action::select(q.candidates.front())); break;
            case PromptKind::DirectionSelect: answer(Action::direction(s_.agent.facing)); break;
            }
        }
    }

    void answer(const Action& a)
    {
        const PromptState p = *s_.prompt;
        s_.prompt.reset();
        switch (p.kind) {
        case PromptKind::Confirmation:
            if (a.kind != ActionKind::Confirm) return cancel();
            return confirmed(p, a.yes);
        case PromptKind::ItemSelect:
            if (a.kind != ActionKind::MenuSelect) return cancel();
            if (std::find(p.candidates.begin(), p.candidates.end(), a.letter) == p.candidates.end()) {
                if (s_.agent.item(a.letter)) fail("WrongCategory", "That is a silly thing to " + verb(p.origin) + ".");
                else fail("NoSuchItem", "You don't have that object.");
                return;
            }
            return selected(p.origin, a.letter);
        case PromptKind::DirectionSelect:
            if (a.kind != ActionKind::Direction && a.kind != ActionKind::Move) return cancel();
            return directed(p.origin, p.item, a.dir);
        }
    }

    void cancel() { s_.message = "Never mind."; }

    void fail(std::string code, std::string msg)
    {
        r_.error = std::move(code);
        s_.message = std::move(msg);
    }

    static std::string verb(ActionKind k)
    {
        switch (k) {
        case ActionKind::Eat: return "eat";
        case ActionKind::Wear: return "wear";
        case ActionKind::Wield: return "wield";
        case ActionKind::PutOn: return "put on";
        case ActionKind::Quaff: return "drink";
        case ActionKind::Zap: return "zap";
        case ActionKind::Read: return "read";
        default: return "use or apply";
        }
    }

    void confirmed(const PromptState& p, bool yes)
    {
        if (p.origin == ActionKind::Pray) {
            if (!yes) return cancel();
            const bool altar = s_.terrain[s_.agent.pos] == TerrainKind::Altar;
            emit(EventKind::Prayed, altar ? "altar" : "", s_.agent.pos);
            s_.message = "You begin praying to the gods.";
            return advance();
        }
        // Eating from the floor.
        if (yes) {
            const auto idx = floor_food();
            if (!idx) return cancel();
            const std::string name = object_name(s_.objects[*idx].obj);
            take_from_floor(*idx);
            emit(EventKind::Ate, name, s_.agent.pos);
            s_.message = "This " + name + " is delicious!";
            return advance();
        }
        ask_item(ActionKind::Eat);
    }

    void selected(ActionKind origin, char letter)
    {
        const InventoryItem& it = *s_.agent.item(letter);
        const ObjectKind& k = s_.kind_of(it.obj);
        const Coord here = s_.agent.pos;
        switch (origin) {
        case ActionKind::Eat:
            emit(EventKind::Ate, k.name, here);
            s_.message = "This " + k.name + " is delicious!";
            consume(letter);
            break;
        case ActionKind::Wear:
            s_.agent.worn.push_back(letter);
            emit(EventKind::Worn, k.name, here);
            s_.message = "You are now wearing " + with_article(k.name) + ".";
            refresh_levitation();
            break;
        case ActionKind::PutOn:
            s_.agent.worn.push_back(letter);
            emit(EventKind::PutOn, k.name, here);
            s_.message = std::string(1, letter) + " - " + with_article(k.name) + " (being worn).";
            refresh_levitation();
            break;
        case ActionKind::Wield:
            s_.agent.wielded = letter;
            emit(EventKind::Wielded, k.name, here);
            s_.message = std::string(1, letter) + " - " + with_article(k.name) + " (weapon in hand).";
            break;
        case ActionKind::Quaff:
            emit(EventKind::Quaffed, k.name, here);
            quaff(k);
            consume(letter);
            break;
        case ActionKind::Read:
            emit(EventKind::Read, k.name, here);
            s_.message = "A lit field surrounds you!";
            for (int dy = -5; dy <= 5; ++dy)
                for (int dx = -5; dx <= 5; ++dx) {
                    const Coord c{here.x + dx, here.y + dy};
                    if (s_.lit.contains(c)) s_.lit[c] = 1;
                }
            consume(letter);
            break;
        case ActionKind::Apply:
            if (k.category == ObjectCategory::Key || k.effect == ItemEffect::Cold) {
                return open_prompt({PromptKind::DirectionSelect, "In what direction?", origin, {}, letter});
            }
            emit(EventKind::Applied, k.name, here);
            s_.message = "You produce a high whistling sound.";
            break;
        case ActionKind::Zap:
            return open_prompt({PromptKind::DirectionSelect, "In what direction?", origin, {}, letter});
        default: return;
        }
        advance();
    }

    void directed(ActionKind origin, char item, Dir d)
    {
        switch (origin) {
        case ActionKind::Kick: kick(d); break;
        case ActionKind::Open: open(d); break;
        case ActionKind::Apply: apply_toward(item, d); break;
        case ActionKind::Zap: {
            const ObjectKind& k = s_.kind_of(s_.agent.item(item)->obj);
            emit(EventKind::Zapped, k.name, s_.agent.pos);
            ray(k.effect, d);
            break;
        }
        default: return;
        }
        advance();
    }

    // ---- commands -----------------------------------------------------

    void command(const Action& a)
    {
        switch (a.kind) {
        case ActionKind::Move: return move(a.dir);
        case ActionKind::Search: return search();
        case ActionKind::Kick:
        case ActionKind::Open: return open_prompt({PromptKind::DirectionSelect, "In what direction?", a.kind, {}, 0});
        case ActionKind::Eat: return eat();
        case ActionKind::PickUp: return pick_up();
        case ActionKind::Pray:
            return open_prompt({PromptKind::Confirmation, "Are you sure you want to pray? [yn] (n)", a.kind, {}, 0});
        case ActionKind::Apply:
        case ActionKind::Wear:
        case ActionKind::Wield:
        case ActionKind::PutOn:
        case ActionKind::Quaff:
        case ActionKind::Zap:
        case ActionKind::Read: return ask_item(a.kind);
        case ActionKind::Confirm:
        case ActionKind::MenuSelect:
        case ActionKind::Direction: s_.message = "Unknown command."; return;
        }
    }

    bool fits(ActionKind origin, const InventoryItem& it) const
    {
        const ObjectCategory c = s_.kind_of(it.obj).category;
        const auto& worn = s_.agent.worn;
        const bool on = std::find(worn.begin(), worn.end(), it.letter) != worn.end();
        switch (origin) {
        case ActionKind::Eat: return c == ObjectCategory::Comestible;
        case ActionKind::Wear: return !on && (c == ObjectCategory::Armor || c == ObjectCategory::Boots);
        case ActionKind::PutOn: return !on && (c == ObjectCategory::Ring || c == ObjectCategory::Amulet);
        case ActionKind::Wield: return c == ObjectCategory::Weapon && s_.agent.wielded != it.letter;
        case ActionKind::Quaff: return c == ObjectCategory::Potion;
        case ActionKind::Zap: return c == ObjectCategory::Wand;
        case ActionKind::Read: return c == ObjectCategory::Scroll;
        case ActionKind::Apply: return c == ObjectCategory::Tool || c == ObjectCategory::Key;
        default: return false;
        }
    }

    void ask_item(ActionKind origin)
    {
        std::vector<char> letters;
        for (const auto& it : s_.agent.inventory)
            if (fits(origin, it)) letters.push_back(it.letter);
        if (letters.empty()) {
            const std::string what = origin == ActionKind::Wear ? "anything else to wear"
                                                                 : "anything to " + verb(origin);
            return fail("NoSuchItem", "You don't have " + what + ".");
        }
        const std::string q = "What do you want to " + verb(origin) + "? [" + std::string(letters.begin(), letters.end()) +
                              " or ?*]";
        open_prompt({PromptKind::ItemSelect, q, origin, std::move(letters), 0});
    }

    void move(Dir d)
    {
        AgentState& ag = s_.agent;
        ag.facing = d;
        const Coord to = offset(ag.pos, d);
        if (!s_.terrain.contains(to)) return;
        if (diagonal_blocked(s_.terrain, ag.pos, to)) {
            s_.message = "You can't move diagonally into or out of a doorway.";
            return;
        }
        if (const MonsterState* m = s_.monster_at(to)) {
            if (!m->hostile) {
                s_.message = "You stop. The " + m->name + " is in your way.";
                return;
            }
            hit_monster(static_cast<std::size_t>(m - s_.monsters.data()), weapon_dice());
            return advance();
        }
        if (s_.boulder_at(to)) return push(d);
        const TerrainKind t = s_.terrain[to];
        if (t == TerrainKind::ClosedDoor) {
            open_door(to);
            return advance();
        }
        if (t == TerrainKind::LockedDoor) {
            s_.message = "This door is locked.";
            return;
        }
        const bool floats = ag.levitating && t == TerrainKind::Water;
        if (!agent_enterable(t) && !floats) return;
        enter(to);
        advance();
    }

    void push(Dir d)
    {
        const Coord from = offset(s_.agent.pos, d);
        const Coord beyond = offset(from, d);
        if (is_diagonal(d) || !s_.terrain.contains(beyond)) {
            s_.message = "You try to move the boulder, but in vain.";
            return;
        }
        if (s_.monster_at(beyond) || s_.boulder_at(beyond)) {
            s_.message = "Perhaps that's why you cannot move past it.";
            return;
        }
        auto it = std::find(s_.boulders.begin(), s_.boulders.end(), from);
        const TerrainKind t = s_.terrain[beyond];
        if (t == TerrainKind::Water) {
            s_.boulders.erase(it);
            s_.terrain[beyond] = TerrainKind::Floor;
            s_.message = "There is a large splash as the boulder fills the pool.";
        } else if (t == TerrainKind::Lava) {
            s_.boulders.erase(it);
            s_.message = "The boulder sinks into the lava.";
        } else if (boulder_passable(t)) {
            *it = beyond;
            s_.message = "With great effort you move the boulder.";
        } else {
            s_.message = "You try to move the boulder, but in vain.";
            return;
        }
        const std::string note = s_.message;
        enter(from);
        if (s_.message.empty()) s_.message = note;
        if (goals_covered()) emit(EventKind::GoalsCovered, "", s_.agent.pos);
        advance();
    }

    bool goals_covered() const
    {
        bool any = false;
        for (int y = 0; y < s_.terrain.height(); ++y)
            for (int x = 0; x < s_.terrain.width(); ++x) {
                if (s_.terrain.at(x, y) != TerrainKind::Fountain) continue;
                if (!s_.boulder_at({x, y})) return false;
                any = true;
            }
        return any;
    }

    void enter(Coord to)
    {
        AgentState& ag = s_.agent;
        ag.pos = to;
        s_.message.clear();
        emit(EventKind::ReachedCoord, "", to);
        if (s_.terrain[to] == TerrainKind::Lava && !ag.levitating) return die("lava", "You fall into the lava!");
        if (auto* trap = const_cast<TrapState*>(s_.trap_at(to))) {
            trap->hidden = false;
            emit(EventKind::TrapTriggered, trap->name, to);
            if (trap->name == "teleport") {
                teleport();
                emit(EventKind::ReachedCoord, "", ag.pos);
            } else if (trap->name == "fire") {
                s_.message = "A tower of flame erupts from the floor!";
            } else {
                s_.message = "You trigger a trap!";
                s_.done = "trap";
                return;
            }
        }
        arrive();
    }

    void arrive()
    {
        const Coord at = s_.agent.pos;
        switch (s_.terrain[at]) {
        case TerrainKind::StairDown: emit(EventKind::ReachedStair, "down", at); break;
        case TerrainKind::StairUp: emit(EventKind::ReachedStair, "up", at); break;
        case TerrainKind::Sink: emit(EventKind::ReachedFeature, "sink", at); break;
        case TerrainKind::Fountain: emit(EventKind::ReachedFeature, "fountain", at); break;
        case TerrainKind::Altar: emit(EventKind::ReachedFeature, "altar", at); break;
        default: break;
        }
        const auto here = s_.objects_at(at);
        if (!here.empty() && s_.message.empty())
            s_.message = "You see here " + with_article(object_name(here.back()->obj)) + ".";
    }

    void teleport()
    {
        std::vector<Coord> cells;
        for (int y = 0; y < s_.terrain.height(); ++y)
            for (int x = 0; x < s_.terrain.width(); ++x) {
                const Coord c{x, y};
                if (is_open_ground(s_.terrain[c]) && !s_.monster_at(c) && !s_.boulder_at(c) && !s_.trap_at(c))
                    cells.push_back(c);
            }
        s_.message = "You feel a wrenching sensation.";
        if (cells.empty()) return;
        s_.agent.pos = cells[s_.rng.index(cells.size())];
    }

    void search()
    {
        for (Dir d : kAllDirs) {
            const Coord c = offset(s_.agent.pos, d);
            if (s_.terrain.contains(c) && s_.terrain[c] == TerrainKind::SecretDoor && s_.rng.unit() < s_.config.search_chance) {
                s_.terrain[c] = TerrainKind::ClosedDoor;
                s_.message = "You find a hidden door.";
            }
        }
        advance();
    }

    void open(Dir d)
    {
        const Coord c = offset(s_.agent.pos, d);
        if (!s_.terrain.contains(c)) return;
        switch (s_.terrain[c]) {
        case TerrainKind::ClosedDoor: open_door(c); break;
        case TerrainKind::LockedDoor: s_.message = "This door is locked."; break;
        case TerrainKind::OpenDoor: s_.message = "This door is already open."; break;
        default: s_.message = "You see no door there."; break;
        }
    }

    void open_door(Coord c)
    {
        if (s_.rng.unit() < s_.config.open_chance) {
            s_.terrain[c] = TerrainKind::OpenDoor;
            emit(EventKind::DoorOpened, "", c);
            s_.message = "The door opens.";
        } else {
            s_.message = "This door is stuck.";
        }
    }

    void kick(Dir d)
    {
        const Coord c = offset(s_.agent.pos, d);
        if (!s_.terrain.contains(c)) return;
        if (const MonsterState* m = s_.monster_at(c)) {
            hit_monster(static_cast<std::size_t>(m - s_.monsters.data()), s_.config.unarmed);
            return;
        }
        const TerrainKind t = s_.terrain[c];
        if (t == TerrainKind::LockedDoor || t == TerrainKind::ClosedDoor) {
            if (s_.rng.unit() < s_.config.kick_chance) {
                s_.terrain[c] = TerrainKind::Floor;
                emit(EventKind::DoorOpened, "", c);
                s_.message = "WHAMM!! As you kick the door, it crashes open!";
            } else {
                s_.message = "WHAMM!!";
            }
        } else if (s_.boulder_at(c) || !agent_enterable(t)) {
            s_.message = "Ouch! That hurts!";
        } else {
            s_.message = "You kick at empty space.";
        }
    }

    void apply_toward(char letter, Dir d)
    {
        const ObjectKind& k = s_.kind_of(s_.agent.item(letter)->obj);
        emit(EventKind::Applied, k.name, s_.agent.pos);
        if (k.effect == ItemEffect::Cold) return ray(ItemEffect::Cold, d);
        const Coord c = offset(s_.agent.pos, d);
        if (s_.terrain.contains(c) && s_.terrain[c] == TerrainKind::LockedDoor) {
            s_.terrain[c] = TerrainKind::ClosedDoor;
            s_.message = "You succeed in unlocking the door.";
        } else {
            s_.message = "You see no locked door there.";
        }
    }

    void ray(ItemEffect effect, Dir d)
    {
        for (int k = 1; k <= s_.config.ray_range; ++k) {
            const Coord c = offset(s_.agent.pos, d, k);
            if (!s_.terrain.contains(c) || !ray_passable(s_.terrain[c])) break;
            if (effect == ItemEffect::Cold) {
                if (s_.terrain[c] == TerrainKind::Lava) s_.terrain[c] = TerrainKind::Floor;
                else if (s_.terrain[c] == TerrainKind::Water) s_.terrain[c] = TerrainKind::Ice;
                continue;
            }
            if (const MonsterState* m = s_.monster_at(c)) {
                const auto idx = static_cast<std::size_t>(m - s_.monsters.data());
                if (effect == ItemEffect::Death) kill_monster(idx);
                else hit_monster(idx, {2, 12});
                return;
            }
        }
        if (effect == ItemEffect::Cold) s_.message = "The ray freezes everything in its path.";
        else if (s_.message.empty()) s_.message = "The bolt misses.";
    }

    void eat()
    {
        if (const auto idx = floor_food()) {
            const std::string name = object_name(s_.objects[*idx].obj);
            return open_prompt({PromptKind::Confirmation, "There is " + with_article(name) + " here; eat it? [ynq] (n)",
                                ActionKind::Eat, {}, 0});
        }
        ask_item(ActionKind::Eat);
    }

    std::optional<std::size_t> floor_food() const
    {
        if (s_.agent.levitating) return std::nullopt;
        for (std::size_t i = s_.objects.size(); i-- > 0;) {
            const FloorObject& o = s_.objects[i];
            if (o.pos == s_.agent.pos && s_.kind_of(o.obj).category == ObjectCategory::Comestible) return i;
        }
        return std::nullopt;
    }

    void pick_up()
    {
        if (s_.agent.levitating) {
            s_.message = "You cannot reach the floor.";
            return;
        }
        std::optional<std::size_t> idx;
        for (std::size_t i = s_.objects.size(); i-- > 0;) {
            const FloorObject& o = s_.objects[i];
            if (o.pos == s_.agent.pos && s_.kind_of(o.obj).category != ObjectCategory::Rock) {
                idx = i;
                break;
            }
        }
        if (!idx) {
            s_.message = "There is nothing here to pick up.";
            return;
        }
        auto& inv = s_.agent.inventory;
        const ObjectInstance obj = s_.objects[*idx].obj;
        const bool coin = s_.kind_of(obj).category == ObjectCategory::Coin;
        char letter = '$';
        if (!coin) {
            const auto free = std::find_if(kLetters.begin(), kLetters.end(), [&](char c) { return !s_.agent.item(c); });
            if (free == kLetters.end()) return fail("InventoryFull", "You have too many items.");
            letter = *free;
        }
        take_from_floor(*idx);
        auto existing = std::find_if(inv.begin(), inv.end(), [&](const InventoryItem& it) { return it.letter == letter; });
        if (existing != inv.end()) {
            existing->obj.quantity += obj.quantity;
        } else {
            const auto pos = std::find_if(inv.begin(), inv.end(),
                                          [&](const InventoryItem& it) { return letter_rank(it.letter) > letter_rank(letter); });
            inv.insert(pos, InventoryItem{letter, obj});
        }
        const std::string name = object_name(obj);
        emit(EventKind::PickedUp, name, s_.agent.pos);
        s_.message = std::string(1, letter) + " - " + with_article(name) + ".";
        advance();
    }

    // ---- effects ------------------------------------------------------

    void quaff(const ObjectKind& k)
    {
        switch (k.effect) {
        case ItemEffect::Levitation:
            s_.agent.levitation_timer = std::max(s_.agent.levitation_timer, s_.config.levitation_turns);
            s_.message = "You start to float in the air!";
            refresh_levitation();
            break;
        case ItemEffect::Heal:
            s_.agent.hp = s_.agent.hp_max;
            s_.message = "You feel better.";
            break;
        default: s_.message = "This tastes like water."; break;
        }
    }

    void refresh_levitation()
    {
        AgentState& ag = s_.agent;
        bool worn = false;
        for (char l : ag.worn)
            if (const auto* it = ag.item(l); it && s_.kind_of(it->obj).effect == ItemEffect::Levitation) worn = true;
        const bool was = ag.levitating;
        ag.levitating = worn || ag.levitation_timer > 0;
        if (!was || ag.levitating) return;
        s_.message = "You float gently to the ground.";
        const TerrainKind t = s_.terrain[ag.pos];
        if (t == TerrainKind::Lava) die("lava", "You fall into the lava!");
        else if (t == TerrainKind::Water) die("drowning", "You fall into the water and drown.");
    }

    Dice weapon_dice() const
    {
        if (const auto l = s_.agent.wielded)
            if (const auto* it = s_.agent.item(*l))
                if (const auto& d = s_.kind_of(it->obj).damage) return *d;
        return s_.config.unarmed;
    }

    void hit_monster(std::size_t idx, Dice dice)
    {
        MonsterState& m = s_.monsters[idx];
        m.asleep = false;
        m.hp -= roll(s_.rng, dice);
        if (m.hp <= 0) return kill_monster(idx);
        s_.message = "You hit the " + m.name + ".";
    }

    void kill_monster(std::size_t idx)
    {
        const MonsterState m = s_.monsters[idx];
        s_.monsters.erase(s_.monsters.begin() + static_cast<std::ptrdiff_t>(idx));
        emit(EventKind::Killed, m.name, m.pos);
        s_.message = "You kill the " + m.name + "!";
    }

    void attack_agent(const MonsterState& m)
    {
        AgentState& ag = s_.agent;
        if (m.instakill) ag.hp = 0;
        else ag.hp = std::max(0, ag.hp - roll(s_.rng, m.damage));
        s_.message = "The " + m.name + " hits!";
        if (ag.hp == 0) die(m.name, "You die...");
    }

    void die(const std::string& cause, const std::string& msg)
    {
        s_.agent.alive = false;
        s_.agent.hp = 0;
        s_.done = "died";
        s_.message = msg;
        emit(EventKind::Died, cause, s_.agent.pos);
    }

    // ---- monster movement ---------------------------------------------

    bool walkable(const MonsterState& m, Coord c) const
    {
        if (!s_.terrain.contains(c)) return false;
        const TerrainKind t = s_.terrain[c];
        if (!(m.passes_walls ? t != TerrainKind::Lava && t != TerrainKind::Water : monster_passable(t))) return false;
        return !s_.trap_at(c) && !s_.boulder_at(c);
    }

    Grid<int> distances() const
    {
        Grid<int> dist(s_.terrain.width(), s_.terrain.height(), kFar);
        const MonsterState walker{};
        std::deque<Coord> queue{s_.agent.pos};
        dist[s_.agent.pos] = 0;
        while (!queue.empty()) {
            const Coord c = queue.front();
            queue.pop_front();
            for (Dir d : kAllDirs) {
                const Coord n = offset(c, d);
                if (!walkable(walker, n) || dist[n] != kFar || diagonal_blocked(s_.terrain, c, n)) continue;
                dist[n] = dist[c] + 1;
                queue.push_back(n);
            }
        }
        return dist;
    }

    bool free_step(const MonsterState& m, Coord to) const
    {
        return walkable(m, to) && !s_.monster_at(to) && to != s_.agent.pos && !diagonal_blocked(s_.terrain, m.pos, to);
    }

    void chase(MonsterState& m, const Grid<int>& dist)
    {
        int best = dist[m.pos];
        std::vector<Coord> options;
        for (Dir d : kAllDirs) {
            const Coord n = offset(m.pos, d);
            if (!free_step(m, n) || dist[n] > best) continue;
            if (dist[n] < best) {
                best = dist[n];
                options.clear();
            }
            if (dist[n] < dist[m.pos]) options.push_back(n);
        }
        if (!options.empty()) m.pos = options[s_.rng.index(options.size())];
    }

    void wander(MonsterState& m)
    {
        std::array<Coord, 8> options{};
        std::size_t n = 0;
        for (Dir d : kAllDirs)
            if (const Coord c = offset(m.pos, d); free_step(m, c)) options[n++] = c;
        if (n > 0) m.pos = options[s_.rng.index(n)];
    }

    // ---- bookkeeping --------------------------------------------------

    std::string object_name(const ObjectInstance& o) const
    {
        const ObjectKind& k = s_.kind_of(o);
        if (k.category == ObjectCategory::Coin && o.quantity > 1) return std::to_string(o.quantity) + " gold pieces";
        return k.name;
    }

    void take_from_floor(std::size_t idx) { s_.objects.erase(s_.objects.begin() + static_cast<std::ptrdiff_t>(idx)); }

    void consume(char letter)
    {
        AgentState& ag = s_.agent;
        auto it = std::find_if(ag.inventory.begin(), ag.inventory.end(), [&](const InventoryItem& i) { return i.letter == letter; });
        if (it == ag.inventory.end()) return;
        if (--it->obj.quantity > 0) return;
        ag.inventory.erase(it);
        if (ag.wielded == letter) ag.wielded.reset();
        std::erase(ag.worn, letter);
    }

    void emit(EventKind k, std::string name, Coord pos) { r_.events.push_back({k, std::move(name), pos}); }

    void advance() { r_.time_advanced = true; }

    WorldState& s_;
    StepResult& r_;
};

}  // namespace

const InventoryItem* AgentState::item(char letter) const
{
    for (const auto& it : inventory)
        if (it.letter == letter) return &it;
    return nullptr;
}

char give_item(WorldState& s, std::string_view name, int quantity)
{
    const auto idx = s.catalog->find_object(name);
    if (!idx) throw std::invalid_argument("unknown object: " + std::string(name));
    auto& inv = s.agent.inventory;
    const bool coin = s.catalog->objects()[*idx].category == ObjectCategory::Coin;
    char letter = '$';
    if (!coin) {
        const auto free = std::find_if(kLetters.begin(), kLetters.end(), [&](char c) { return !s.agent.item(c); });
        if (free == kLetters.end()) throw std::length_error("inventory full");
        letter = *free;
    }
    auto existing = std::find_if(inv.begin(), inv.end(), [&](const InventoryItem& it) { return it.letter == letter; });
    if (existing != inv.end()) {
        existing->obj.quantity += quantity;
    } else {
        const auto pos = std::find_if(inv.begin(), inv.end(),
                                      [&](const InventoryItem& it) { return letter_rank(it.letter) > letter_rank(letter); });
        inv.insert(pos, InventoryItem{letter, {*idx, quantity, ""}});
    }
    return letter;
}

const MonsterState* WorldState::monster_at(Coord c) const
{
    for (const auto& m : monsters)
        if (m.pos == c) return &m;
    return nullptr;
}

bool WorldState::boulder_at(Coord c) const { return std::find(boulders.begin(), boulders.end(), c) != boulders.end(); }

const TrapState* WorldState::trap_at(Coord c) const
{
    for (const auto& t : traps)
        if (t.pos == c) return &t;
    return nullptr;
}

std::vector<const FloorObject*> WorldState::objects_at(Coord c) const
{
    std::vector<const FloorObject*> out;
    for (const auto& o : objects)
        if (o.pos == c) out.push_back(&o);
    return out;
}

std::string_view event_kind_name(EventKind kind)
{
    constexpr std::array<std::string_view, 18> names{
        "ate",   "wielded", "worn",   "put_on",         "quaffed", "picked_up", "killed",   "reached_stair",
        "reached_feature", "reached_coord", "prayed", "door_opened", "died", "trap_triggered", "zapped", "applied",
        "read",  "goals_covered"};
    return names[static_cast<std::size_t>(kind)];
}

std::string to_string(const Event& e)
{
    std::string out(event_kind_name(e.kind));
    if (!e.name.empty()) out += "{" + e.name + "}";
    return out + "@" + hackbox::to_string(e.pos);
}

void update_fov(WorldState& s)
{
    s.sight = line_of_sight(s.terrain, s.agent.pos);
    s.visible = s.sight;
    const Coord a = s.agent.pos;
    auto& vis = s.visible.cells();
    auto& mem = s.remembered.cells();
    const auto& lit = s.lit.cells();
    const int w = s.terrain.width();
    for (std::size_t i = 0; i < vis.size(); ++i) {
        if (!vis[i]) continue;
        const Coord c{static_cast<int>(i) % w, static_cast<int>(i) / w};
        if (!lit[i] && chebyshev(c, a) > 1) vis[i] = 0;
        else mem[i] = 1;
    }
}

bool monster_sees(const WorldState& s, Coord from) { return s.sight.contains(from) && s.sight[from] != 0; }

WorldState reset(const LevelBlueprint& bp, std::uint64_t seed, const EngineConfig& config, const Catalog& catalog)
{
    WorldState s;
    s.catalog = &catalog;
    s.config = config;
    s.rng = Rng(seed);
    s.terrain = bp.terrain;
    s.lit = bp.lit;
    for (const auto& p : bp.placements) {
        switch (p.kind) {
        case PlacementKind::Monster: {
            const auto idx = catalog.find_monster(p.name);
            if (!idx) throw std::invalid_argument("unknown monster in blueprint: " + p.name);
            const MonsterKind& k = catalog.monsters()[*idx];
            MonsterState m;
            m.kind = *idx;
            m.name = k.name;
            m.cls = k.cls;
            m.pos = p.pos;
            m.hp = std::max(1, roll(s.rng, k.hit_dice));
            m.damage = k.damage;
            m.speed = k.speed;
            m.asleep = p.asleep;
            m.hostile = p.hostile && k.hostile;
            m.instakill = k.instakill;
            s.monsters.push_back(std::move(m));
            break;
        }
        case PlacementKind::Object: {
            const auto idx = catalog.find_object(p.name, p.cls == '?' ? std::nullopt : std::optional<char>(p.cls));
            if (!idx) throw std::invalid_argument("unknown object in blueprint: " + p.name);
            if (catalog.objects()[*idx].name == "boulder") s.boulders.push_back(p.pos);
            else s.objects.push_back({p.pos, {*idx, std::max(1, p.quantity), p.montype}});
            break;
        }
        case PlacementKind::Trap: s.traps.push_back({p.pos, p.name, p.name == "invisible"}); break;
        case PlacementKind::Feature: break;
        }
    }
    auto free = [&](Coord c) { return !s.monster_at(c) && !s.boulder_at(c); };
    if (bp.start_pos && free(*bp.start_pos)) {
        s.agent.pos = *bp.start_pos;
    } else {
        std::vector<Coord> cells;
        for (int y = 0; y < s.terrain.height(); ++y)
            for (int x = 0; x < s.terrain.width(); ++x)
                if (is_open_ground(s.terrain.at(x, y)) && free({x, y}) && !s.trap_at({x, y})) cells.push_back({x, y});
        if (cells.empty()) throw NoStartCell();
        s.agent.pos = cells[s.rng.index(cells.size())];
    }
    s.agent.hp = s.agent.hp_max = config.agent_hp;
    if (config.mapped) s.remembered.fill(1);
    update_fov(s);
    return s;
}

StepResult step(WorldState& s, const Action& action)
{
    if (s.done) throw EpisodeAlreadyDone();
    StepResult r;
    s.message.clear();
    Turn turn(s, r);
    turn.act(action);
    if (r.time_advanced) {
        turn.tick();
        if (!s.done) {
            update_fov(s);
            turn.monsters();
        }
    }
    update_fov(s);
    return r;
}

}  // namespace hackbox::sim
