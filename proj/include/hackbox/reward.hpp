#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "hackbox/catalog.hpp"
#include "hackbox/sim/world.hpp"

namespace hackbox::reward {

inline constexpr double kStepPenalty = -0.001;

class UnknownEntity : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct EventMatcher {
    sim::EventKind kind = sim::EventKind::ReachedStair;
    /// Exact name filter; empty matches any name.
    std::string name;
    std::optional<Coord> pos;

    [[nodiscard]] bool matches(const sim::Event& e) const;
};

struct EventSpec {
    EventMatcher match;
    double reward = 1.0;
    bool repeatable = false;
    bool terminal_required = true;
    bool terminal_sufficient = false;
};

/// Called every step with the states around the action.
using CustomHook = std::function<double(const sim::WorldState& prev, const sim::Action& action, const sim::WorldState& next)>;

struct RewardConfig;

/// Reaching the down staircase: +1 and done.
struct DefaultReward {};
struct Flat {
    std::vector<EventSpec> events;
};
/// Events must happen in order; anything out of turn is ignored.
struct Sequential {
    std::vector<EventSpec> events;
};
enum class Combinator : std::uint8_t { All, Any };
struct Grouped {
    std::vector<RewardConfig> children;
    Combinator combinator = Combinator::All;
};

struct RewardConfig {
    std::variant<DefaultReward, Flat, Sequential, Grouped> node;
    std::vector<CustomHook> hooks;
};

struct EventOptions {
    double reward = 1.0;
    bool repeatable = false;
    bool terminal_required = true;
    bool terminal_sufficient = false;
};

/// Builds Flat / Sequential configs with name checking against the catalog.
class EventListBuilder {
public:
    explicit EventListBuilder(const Catalog& catalog = Catalog::builtin()) : catalog_(&catalog) {}

    EventListBuilder& add_eat_event(std::string_view name, EventOptions o = {});
    EventListBuilder& add_wield_event(std::string_view name, EventOptions o = {});
    EventListBuilder& add_wear_event(std::string_view name, EventOptions o = {});
    EventListBuilder& add_amulet_event(EventOptions o = {});
    EventListBuilder& add_puton_event(std::string_view name, EventOptions o = {});
    EventListBuilder& add_quaff_event(std::string_view name, EventOptions o = {});
    EventListBuilder& add_pickup_event(std::string_view name, EventOptions o = {});
    EventListBuilder& add_kill_event(std::string_view monster, EventOptions o = {});
    /// "sink", "fountain", "altar", "staircase down" or "staircase up".
    EventListBuilder& add_location_event(std::string_view location, EventOptions o = {});
    EventListBuilder& add_coordinate_event(Coord c, EventOptions o = {});
    EventListBuilder& add_pray_event(EventOptions o = {});
    EventListBuilder& add_trap_event(std::string_view trap, EventOptions o = {});
    EventListBuilder& add_event(EventMatcher m, EventOptions o = {});
    EventListBuilder& add_custom(CustomHook hook);

    [[nodiscard]] RewardConfig flat() const;
    [[nodiscard]] RewardConfig sequential() const;

private:
    std::string object_name(std::string_view name) const;

    const Catalog* catalog_;
    std::vector<EventSpec> events_;
    std::vector<CustomHook> hooks_;
};

struct StepInput {
    const std::vector<sim::Event>* events = nullptr;
    bool time_advanced = true;
    bool died = false;
    /// The engine ended the episode for another reason (e.g. a trap).
    bool engine_done = false;
    int step_count = 0;
    int max_steps = 0;
    const sim::WorldState* prev = nullptr;
    const sim::Action* action = nullptr;
    const sim::WorldState* next = nullptr;
};

struct Outcome {
    double reward = 0.0;
    bool done = false;
    /// The task's own termination rule fired (as opposed to death or timeout).
    bool success = false;
};

/// Runtime state of a config over one episode.
class RewardManager {
public:
    explicit RewardManager(RewardConfig config);

    void reset();
    Outcome evaluate(const StepInput& in);

    [[nodiscard]] const RewardConfig& config() const { return config_; }

private:
    struct Node {
        std::vector<bool> fired;
        std::size_t next = 0;
        bool complete = false;
        std::vector<Node> children;
    };

    static Node build(const RewardConfig& c);
    static void clear(Node& n);
    static double feed(const RewardConfig& c, Node& n, const std::vector<sim::Event>& events);

    RewardConfig config_;
    Node root_;
};

}  // namespace hackbox::reward
