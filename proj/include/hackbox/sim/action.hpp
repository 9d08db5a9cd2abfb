#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hackbox/geometry.hpp"

namespace hackbox::sim {

enum class ActionKind : std::uint8_t {
    Move,
    Search,
    Kick,
    Open,
    Eat,
    PickUp,
    Apply,
    Wear,
    Wield,
    PutOn,
    Quaff,
    Zap,
    Pray,
    Read,
    Confirm,
    MenuSelect,
    Direction,
};

struct Action {
    ActionKind kind = ActionKind::Search;
    Dir dir = Dir::N;
    bool yes = false;
    char letter = 'a';

    static Action move(Dir d) { return {ActionKind::Move, d, false, 'a'}; }
    static Action confirm(bool y) { return {ActionKind::Confirm, Dir::N, y, 'a'}; }
    static Action select(char letter) { return {ActionKind::MenuSelect, Dir::N, false, letter}; }
    static Action direction(Dir d) { return {ActionKind::Direction, d, false, 'a'}; }
    static Action simple(ActionKind k) { return {k, Dir::N, false, 'a'}; }

    friend bool operator==(const Action& a, const Action& b)
    {
        if (a.kind != b.kind) return false;
        switch (a.kind) {
        case ActionKind::Move:
        case ActionKind::Direction: return a.dir == b.dir;
        case ActionKind::Confirm: return a.yes == b.yes;
        case ActionKind::MenuSelect: return a.letter == b.letter;
        default: return true;
        }
    }
};

/// Stable protocol name: "move_ne", "eat", "yes", "menu_b", "dir_w", ...
std::string action_name(const Action& a);
std::optional<Action> parse_action(std::string_view name);

/// The eight compass moves.
std::vector<Action> navigation_actions();
/// Moves plus every command, yes/no and menu letters a..h.
std::vector<Action> skill_actions();

}  // namespace hackbox::sim
