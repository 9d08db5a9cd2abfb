#pragma once

// Reference implementations written against the rules, not the engine code.

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hackbox/blueprint.hpp"

namespace hackbox::oracle {

inline bool walk_ok(TerrainKind t, bool locked_ok = true)
{
    switch (t) {
    case TerrainKind::Floor:
    case TerrainKind::Corridor:
    case TerrainKind::Ice:
    case TerrainKind::Cloud:
    case TerrainKind::OpenDoor:
    case TerrainKind::ClosedDoor:
    case TerrainKind::StairDown:
    case TerrainKind::StairUp:
    case TerrainKind::Sink:
    case TerrainKind::Fountain:
    case TerrainKind::Altar: return true;
    case TerrainKind::LockedDoor: return locked_ok;
    default: return false;
    }
}

inline bool door(TerrainKind t)
{
    return t == TerrainKind::OpenDoor || t == TerrainKind::ClosedDoor || t == TerrainKind::LockedDoor;
}

inline constexpr std::array<std::pair<int, int>, 8> kMoves{{{0, -1}, {1, 0}, {0, 1}, {-1, 0}, {1, -1}, {1, 1}, {-1, 1}, {-1, -1}}};

inline std::set<std::pair<int, int>> boulder_cells(const LevelBlueprint& bp)
{
    std::set<std::pair<int, int>> out;
    for (const auto& p : bp.placements)
        if (p.kind == PlacementKind::Object && p.name == "boulder") out.insert({p.pos.x, p.pos.y});
    return out;
}

/// BFS over 8-neighbour moves, boulders and `blocked` cells impassable.
/// Returns the move indices into kMoves, or nullopt.
inline std::optional<std::vector<int>> walk(const LevelBlueprint& bp, Coord from, Coord to,
                                            const std::set<std::pair<int, int>>& blocked = {}, bool locked_ok = true)
{
    const auto boulders = boulder_cells(bp);
    std::map<std::pair<int, int>, std::pair<std::pair<int, int>, int>> parent;
    std::deque<std::pair<int, int>> q{{from.x, from.y}};
    parent[{from.x, from.y}] = {{-1, -1}, -1};
    while (!q.empty()) {
        const auto cur = q.front();
        q.pop_front();
        if (cur == std::pair{to.x, to.y}) {
            std::vector<int> path;
            for (auto c = cur; parent[c].second >= 0; c = parent[c].first) path.push_back(parent[c].second);
            std::reverse(path.begin(), path.end());
            return path;
        }
        const TerrainKind here = bp.terrain.at(cur.first, cur.second);
        for (int m = 0; m < 8; ++m) {
            const std::pair n{cur.first + kMoves[static_cast<std::size_t>(m)].first,
                              cur.second + kMoves[static_cast<std::size_t>(m)].second};
            if (n.first < 0 || n.second < 0 || n.first >= bp.terrain.width() || n.second >= bp.terrain.height()) continue;
            const TerrainKind there = bp.terrain.at(n.first, n.second);
            if (!walk_ok(there, locked_ok) || boulders.count(n) || blocked.count(n) || parent.count(n)) continue;
            if (m >= 4 && (door(here) || door(there))) continue;
            parent[n] = {cur, m};
            q.push_back(n);
        }
    }
    return std::nullopt;
}

/// Breadth-first search over (agent, boulders, filled pools). Pushes are
/// orthogonal; a boulder pushed into water fills it, into lava it is lost.
/// nullopt when the state budget runs out.
inline std::optional<bool> push_reachable(const LevelBlueprint& bp, Coord from, Coord to, std::size_t budget = 2'000'000)
{
    struct State {
        std::pair<int, int> agent;
        std::vector<std::pair<int, int>> boulders;
        std::vector<std::pair<int, int>> filled;
        bool operator<(const State& o) const
        {
            return std::tie(agent, boulders, filled) < std::tie(o.agent, o.boulders, o.filled);
        }
    };
    auto terrain = [&](const State& s, std::pair<int, int> c) {
        if (c.first < 0 || c.second < 0 || c.first >= bp.terrain.width() || c.second >= bp.terrain.height())
            return TerrainKind::Solid;
        if (std::binary_search(s.filled.begin(), s.filled.end(), c)) return TerrainKind::Floor;
        return bp.terrain.at(c.first, c.second);
    };
    const auto b0 = boulder_cells(bp);
    State start{{from.x, from.y}, {b0.begin(), b0.end()}, {}};
    std::set<State> seen{start};
    std::deque<State> q{start};
    while (!q.empty()) {
        if (seen.size() > budget) return std::nullopt;
        const State s = q.front();
        q.pop_front();
        if (s.agent == std::pair{to.x, to.y}) return true;
        for (int m = 0; m < 8; ++m) {
            const int dx = kMoves[static_cast<std::size_t>(m)].first;
            const int dy = kMoves[static_cast<std::size_t>(m)].second;
            const std::pair n{s.agent.first + dx, s.agent.second + dy};
            const TerrainKind here = terrain(s, s.agent);
            const TerrainKind there = terrain(s, n);
            if (m >= 4 && (door(here) || door(there))) continue;
            State next = s;
            const auto b = std::find(next.boulders.begin(), next.boulders.end(), n);
            if (b != next.boulders.end()) {
                if (m >= 4) continue;
                const std::pair beyond{n.first + dx, n.second + dy};
                const TerrainKind bt = terrain(s, beyond);
                if (std::binary_search(s.boulders.begin(), s.boulders.end(), beyond)) continue;
                if (bt == TerrainKind::Water) {
                    next.boulders.erase(b);
                    next.filled.insert(std::upper_bound(next.filled.begin(), next.filled.end(), beyond), beyond);
                } else if (bt == TerrainKind::Lava) {
                    next.boulders.erase(b);
                } else if (walk_ok(bt, false) && !door(bt)) {
                    *b = beyond;
                    std::sort(next.boulders.begin(), next.boulders.end());
                } else {
                    continue;
                }
            } else if (!walk_ok(there)) {
                continue;
            }
            next.agent = n;
            if (seen.insert(next).second) q.push_back(std::move(next));
        }
    }
    return false;
}

/// Plain Sokoban on character rows.
struct Sokoban {
    std::vector<std::string> walls;
    std::set<std::pair<int, int>> boxes;
    std::pair<int, int> player;

    explicit Sokoban(const std::vector<std::string>& rows) : walls(rows)
    {
        for (int y = 0; y < static_cast<int>(rows.size()); ++y)
            for (int x = 0; x < static_cast<int>(rows[static_cast<std::size_t>(y)].size()); ++x) {
                const char c = rows[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)];
                if (c == '$' || c == '*') boxes.insert({x, y});
                if (c == '@' || c == '+') player = {x, y};
            }
    }

    [[nodiscard]] bool wall(std::pair<int, int> c) const
    {
        return walls[static_cast<std::size_t>(c.second)][static_cast<std::size_t>(c.first)] == '#';
    }

    void move(int dx, int dy)
    {
        const std::pair n{player.first + dx, player.second + dy};
        if (wall(n)) return;
        if (boxes.count(n)) {
            const std::pair beyond{n.first + dx, n.second + dy};
            if (wall(beyond) || boxes.count(beyond)) return;
            boxes.erase(n);
            boxes.insert(beyond);
        }
        player = n;
    }
};

}  // namespace hackbox::oracle
