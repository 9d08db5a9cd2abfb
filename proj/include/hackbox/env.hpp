#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "hackbox/reward.hpp"
#include "hackbox/sim/observation.hpp"
#include "hackbox/tasks.hpp"

namespace hackbox {

class IllegalAction : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NotReset : public std::logic_error {
public:
    NotReset() : std::logic_error("step called before reset") {}
};

struct Transition {
    sim::Observation obs;
    double reward = 0.0;
    bool done = false;
    /// "success", "death", "timeout", "engine" or empty while running.
    std::string end_reason;
    std::vector<sim::Event> events;
    bool time_advanced = false;
};

/// One episode runner over a task spec.
class Env {
public:
    explicit Env(tasks::EnvSpec spec);

    sim::Observation reset(std::uint64_t seed);
    /// Index into spec().actions.
    Transition step(std::size_t action);
    Transition step(const sim::Action& action);

    [[nodiscard]] sim::Observation observe() const;
    [[nodiscard]] const tasks::EnvSpec& spec() const { return spec_; }
    [[nodiscard]] const sim::WorldState& state() const { return state_; }
    [[nodiscard]] const LevelBlueprint& level() const { return level_; }
    [[nodiscard]] int steps() const { return steps_; }
    [[nodiscard]] bool done() const { return done_; }
    [[nodiscard]] double episode_return() const { return return_; }

private:
    tasks::EnvSpec spec_;
    std::set<std::string> keys_;
    reward::RewardManager rewards_;
    LevelBlueprint level_;
    sim::WorldState state_;
    bool started_ = false;
    bool done_ = false;
    int steps_ = 0;
    double return_ = 0.0;
};

}  // namespace hackbox
