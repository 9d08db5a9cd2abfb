#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hackbox/blueprint.hpp"

namespace hackbox::gen {

struct Requirements {
    /// Cells the agent must be able to stand on.
    std::vector<Coord> targets;
    /// Also require every down staircase.
    bool down_stairs = true;
    /// Let the search push boulders (needed for River-style maps).
    bool pushes = true;
    /// Cap on expanded search states; exceeding it is reported as an issue.
    std::size_t state_budget = 400000;
};

struct ValidationReport {
    std::vector<std::string> issues;

    [[nodiscard]] bool ok() const { return issues.empty(); }
};

ValidationReport validate_blueprint(const LevelBlueprint& bp, const Requirements& req = {});

/// Agent-reachability of `target`, optionally pushing boulders. Closed and
/// locked doors count as passable; lava and water do not.
std::optional<bool> solvable(const LevelBlueprint& bp, Coord start, Coord target, bool pushes,
                             std::size_t state_budget = 400000);

}  // namespace hackbox::gen
