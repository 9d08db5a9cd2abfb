#include "hackbox/gen/validate.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace hackbox::gen {

namespace {

bool walkable(TerrainKind k)
{
    return (agent_enterable(k) && k != TerrainKind::Lava) || k == TerrainKind::LockedDoor;
}

bool diagonal_blocked(TerrainKind from, TerrainKind to) { return is_doorway(from) || is_doorway(to); }

struct State {
    Coord agent;
    std::vector<Coord> boulders;  // sorted
    std::vector<Coord> bridges;   // sorted water cells turned to floor
};

std::string key(const State& s)
{
    std::string k;
    k.reserve(4 + 2 * (s.boulders.size() + s.bridges.size()) + 1);
    auto put = [&](Coord c) {
        k.push_back(static_cast<char>(c.x));
        k.push_back(static_cast<char>(c.y));
    };
    put(s.agent);
    for (Coord c : s.boulders) put(c);
    k.push_back('|');
    for (Coord c : s.bridges) put(c);
    return k;
}

std::vector<Coord> boulders_of(const LevelBlueprint& bp)
{
    std::vector<Coord> out;
    for (const auto& p : bp.placements)
        if (p.kind == PlacementKind::Object && p.name == "boulder") out.push_back(p.pos);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::optional<bool> solvable(const LevelBlueprint& bp, Coord start, Coord target, bool pushes, std::size_t state_budget)
{
    const auto& grid = bp.terrain;
    State init{start, pushes ? boulders_of(bp) : std::vector<Coord>{}, {}};
    std::vector<Coord> static_boulders = pushes ? std::vector<Coord>{} : boulders_of(bp);
    auto terrain_at = [&](const State& s, Coord c) {
        if (std::binary_search(s.bridges.begin(), s.bridges.end(), c)) return TerrainKind::Floor;
        return grid[c];
    };
    std::unordered_set<std::string> seen{key(init)};
    std::deque<State> queue{init};
    while (!queue.empty()) {
        State s = std::move(queue.front());
        queue.pop_front();
        if (s.agent == target) return true;
        if (seen.size() > state_budget) return std::nullopt;
        for (Dir d : kAllDirs) {
            const Coord n = s.agent + delta(d);
            if (!grid.contains(n)) continue;
            const TerrainKind here = terrain_at(s, s.agent);
            const TerrainKind there = terrain_at(s, n);
            if (!walkable(there)) continue;
            if (is_diagonal(d) && diagonal_blocked(here, there)) continue;
            if (std::binary_search(static_boulders.begin(), static_boulders.end(), n)) continue;
            State next = s;
            next.agent = n;
            const auto hit = std::lower_bound(next.boulders.begin(), next.boulders.end(), n);
            if (hit != next.boulders.end() && *hit == n) {
                if (is_diagonal(d)) continue;
                const Coord to = n + delta(d);
                if (!grid.contains(to) || std::binary_search(next.boulders.begin(), next.boulders.end(), to)) continue;
                const TerrainKind dest = terrain_at(next, to);
                next.boulders.erase(hit);
                if (dest == TerrainKind::Water) {
                    next.bridges.insert(std::lower_bound(next.bridges.begin(), next.bridges.end(), to), to);
                } else if (dest == TerrainKind::Lava) {
                    // sinks without a trace
                } else if (boulder_passable(dest)) {
                    next.boulders.insert(std::lower_bound(next.boulders.begin(), next.boulders.end(), to), to);
                } else {
                    continue;
                }
            }
            if (seen.insert(key(next)).second) queue.push_back(std::move(next));
        }
    }
    return false;
}

ValidationReport validate_blueprint(const LevelBlueprint& bp, const Requirements& req)
{
    ValidationReport report;
    for (const auto& p : bp.placements) {
        if (p.kind == PlacementKind::Feature) continue;
        if (!bp.terrain.contains(p.pos) || !admits_entities(bp.terrain[p.pos]))
            report.issues.push_back(std::string(placement_kind_name(p.kind)) + " " + p.name + " at " + to_string(p.pos) +
                                    " sits on hostile terrain");
    }
    if (!bp.start_pos) {
        report.issues.emplace_back("missing start position");
        return report;
    }
    std::vector<Coord> targets = req.targets;
    if (req.down_stairs)
        for (const auto& s : bp.stairs)
            if (s.direction == StairDirection::Down) targets.push_back(s.pos);
    for (Coord t : targets) {
        const auto r = solvable(bp, *bp.start_pos, t, req.pushes, req.state_budget);
        if (!r) report.issues.push_back("search budget exhausted before reaching " + to_string(t));
        else if (!*r) report.issues.push_back("unreachable target " + to_string(t));
    }
    return report;
}

}  // namespace hackbox::gen
