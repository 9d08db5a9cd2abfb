#include "hackbox/env.hpp"

#include <algorithm>

namespace hackbox {

Env::Env(tasks::EnvSpec spec)
    : spec_(std::move(spec)), keys_(spec_.obs_keys.begin(), spec_.obs_keys.end()), rewards_(spec_.reward)
{
}

sim::Observation Env::reset(std::uint64_t seed)
{
    level_ = tasks::sample_level(spec_, seed);
    state_ = sim::reset(level_, seed, spec_.engine);
    for (const auto& item : spec_.inventory) sim::give_item(state_, item);
    rewards_.reset();
    started_ = true;
    done_ = false;
    steps_ = 0;
    return_ = 0.0;
    return observe();
}

sim::Observation Env::observe() const { return sim::observe(state_, keys_, spec_.crop); }

Transition Env::step(std::size_t action)
{
    if (action >= spec_.actions.size())
        throw IllegalAction("action index " + std::to_string(action) + " outside 0.." + std::to_string(spec_.actions.size() - 1));
    return step(spec_.actions[action]);
}

Transition Env::step(const sim::Action& action)
{
    if (!started_) throw NotReset();
    if (done_) throw sim::EpisodeAlreadyDone();
    if (std::find(spec_.actions.begin(), spec_.actions.end(), action) == spec_.actions.end())
        throw IllegalAction("action " + sim::action_name(action) + " is not allowed in " + spec_.id);

    std::optional<sim::WorldState> prev;
    if (!rewards_.config().hooks.empty()) prev = state_;
    sim::StepResult r = sim::step(state_, action);
    ++steps_;

    reward::StepInput in;
    in.events = &r.events;
    in.time_advanced = r.time_advanced;
    in.died = !state_.agent.alive;
    in.engine_done = state_.done.has_value();
    in.step_count = steps_;
    in.max_steps = spec_.max_steps;
    in.prev = prev ? &*prev : nullptr;
    in.action = &action;
    in.next = &state_;
    const reward::Outcome o = rewards_.evaluate(in);

    Transition t;
    t.reward = o.reward;
    t.done = o.done;
    if (o.done) {
        if (o.success) t.end_reason = "success";
        else if (in.died) t.end_reason = "death";
        else if (in.engine_done) t.end_reason = "engine";
        else t.end_reason = "timeout";
    }
    t.events = std::move(r.events);
    t.time_advanced = r.time_advanced;
    done_ = o.done;
    return_ += o.reward;
    t.obs = observe();
    return t;
}

}  // namespace hackbox
