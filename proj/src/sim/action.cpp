#include "hackbox/sim/action.hpp"

#include <array>

namespace hackbox::sim {

namespace {

constexpr std::array<std::pair<ActionKind, std::string_view>, 13> kCommands{{
    {ActionKind::Search, "search"},
    {ActionKind::Kick, "kick"},
    {ActionKind::Open, "open"},
    {ActionKind::Eat, "eat"},
    {ActionKind::PickUp, "pickup"},
    {ActionKind::Apply, "apply"},
    {ActionKind::Wear, "wear"},
    {ActionKind::Wield, "wield"},
    {ActionKind::PutOn, "puton"},
    {ActionKind::Quaff, "quaff"},
    {ActionKind::Zap, "zap"},
    {ActionKind::Pray, "pray"},
    {ActionKind::Read, "read"},
}};

}  // namespace

std::string action_name(const Action& a)
{
    switch (a.kind) {
    case ActionKind::Move: return "move_" + std::string(dir_name(a.dir));
    case ActionKind::Direction: return "dir_" + std::string(dir_name(a.dir));
    case ActionKind::Confirm: return a.yes ? "yes" : "no";
    case ActionKind::MenuSelect: return std::string("menu_") + a.letter;
    default: break;
    }
    for (const auto& [k, n] : kCommands)
        if (k == a.kind) return std::string(n);
    return "?";
}

std::optional<Action> parse_action(std::string_view name)
{
    if (name.rfind("move_", 0) == 0) {
        if (auto d = dir_from_name(name.substr(5))) return Action::move(*d);
        return std::nullopt;
    }
    if (name.rfind("dir_", 0) == 0) {
        if (auto d = dir_from_name(name.substr(4))) return Action::direction(*d);
        return std::nullopt;
    }
    if (name == "yes") return Action::confirm(true);
    if (name == "no") return Action::confirm(false);
    if (name.rfind("menu_", 0) == 0 && name.size() == 6) {
        const char c = name[5];
        if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '$') return Action::select(c);
        return std::nullopt;
    }
    for (const auto& [k, n] : kCommands)
        if (n == name) return Action::simple(k);
    return std::nullopt;
}

std::vector<Action> navigation_actions()
{
    std::vector<Action> out;
    for (Dir d : kAllDirs) out.push_back(Action::move(d));
    return out;
}

std::vector<Action> skill_actions()
{
    std::vector<Action> out = navigation_actions();
    for (const auto& [k, n] : kCommands) out.push_back(Action::simple(k));
    out.push_back(Action::confirm(true));
    out.push_back(Action::confirm(false));
    for (char c = 'a'; c <= 'h'; ++c) out.push_back(Action::select(c));
    return out;
}

}  // namespace hackbox::sim
