#include "hackbox/reward.hpp"

#include <algorithm>

namespace hackbox::reward {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const std::vector<EventSpec>& default_events()
{
    static const std::vector<EventSpec> events{{{sim::EventKind::ReachedStair, "down", std::nullopt}, 1.0, false, true, false}};
    return events;
}

const std::vector<EventSpec>* event_list(const RewardConfig& c)
{
    if (std::holds_alternative<DefaultReward>(c.node)) return &default_events();
    if (const auto* f = std::get_if<Flat>(&c.node)) return &f->events;
    if (const auto* s = std::get_if<Sequential>(&c.node)) return &s->events;
    return nullptr;
}

}  // namespace

bool EventMatcher::matches(const sim::Event& e) const
{
    return e.kind == kind && (name.empty() || e.name == name) && (!pos || *pos == e.pos);
}

// ---- builder ------------------------------------------------------------

std::string EventListBuilder::object_name(std::string_view name) const
{
    const auto idx = catalog_->find_object(name);
    if (!idx) throw UnknownEntity("unknown object: " + std::string(name));
    return catalog_->objects()[*idx].name;
}

EventListBuilder& EventListBuilder::add_event(EventMatcher m, EventOptions o)
{
    events_.push_back({std::move(m), o.reward, o.repeatable, o.terminal_required, o.terminal_sufficient});
    return *this;
}

EventListBuilder& EventListBuilder::add_eat_event(std::string_view name, EventOptions o)
{
    return add_event({sim::EventKind::Ate, object_name(name), std::nullopt}, o);
}

EventListBuilder& EventListBuilder::add_wield_event(std::string_view name, EventOptions o)
{
    return add_event({sim::EventKind::Wielded, object_name(name), std::nullopt}, o);
}

EventListBuilder& EventListBuilder::add_wear_event(std::string_view name, EventOptions o)
{
    return add_event({sim::EventKind::Worn, object_name(name), std::nullopt}, o);
}

EventListBuilder& EventListBuilder::add_amulet_event(EventOptions o)
{
    return add_event({sim::EventKind::PutOn, object_name("amulet of life saving"), std::nullopt}, o);
}

EventListBuilder& EventListBuilder::add_puton_event(std::string_view name, EventOptions o)
{
    return add_event({sim::EventKind::PutOn, object_name(name), std::nullopt}, o);
}

EventListBuilder& EventListBuilder::add_quaff_event(std::string_view name, EventOptions o)
{
    return add_event({sim::EventKind::Quaffed, object_name(name), std::nullopt}, o);
}

EventListBuilder& EventListBuilder::add_pickup_event(std::string_view name, EventOptions o)
{
    return add_event({sim::EventKind::PickedUp, object_name(name), std::nullopt}, o);
}

EventListBuilder& EventListBuilder::add_kill_event(std::string_view monster, EventOptions o)
{
    const auto idx = catalog_->find_monster(monster);
    if (!idx) throw UnknownEntity("unknown monster: " + std::string(monster));
    return add_event({sim::EventKind::Killed, catalog_->monsters()[*idx].name, std::nullopt}, o);
}

EventListBuilder& EventListBuilder::add_location_event(std::string_view location, EventOptions o)
{
    if (location == "sink" || location == "fountain" || location == "altar")
        return add_event({sim::EventKind::ReachedFeature, std::string(location), std::nullopt}, o);
    if (location == "staircase down" || location == "stairs down" || location == "down")
        return add_event({sim::EventKind::ReachedStair, "down", std::nullopt}, o);
    if (location == "staircase up" || location == "stairs up" || location == "up")
        return add_event({sim::EventKind::ReachedStair, "up", std::nullopt}, o);
    throw UnknownEntity("unknown location: " + std::string(location));
}

EventListBuilder& EventListBuilder::add_coordinate_event(Coord c, EventOptions o)
{
    return add_event({sim::EventKind::ReachedCoord, "", c}, o);
}

EventListBuilder& EventListBuilder::add_pray_event(EventOptions o) { return add_event({sim::EventKind::Prayed, "", std::nullopt}, o); }

EventListBuilder& EventListBuilder::add_trap_event(std::string_view trap, EventOptions o)
{
    if (trap != "teleport" && trap != "fire" && trap != "invisible")
        throw UnknownEntity("unknown trap: " + std::string(trap));
    return add_event({sim::EventKind::TrapTriggered, std::string(trap), std::nullopt}, o);
}

EventListBuilder& EventListBuilder::add_custom(CustomHook hook)
{
    hooks_.push_back(std::move(hook));
    return *this;
}

RewardConfig EventListBuilder::flat() const { return {Flat{events_}, hooks_}; }
RewardConfig EventListBuilder::sequential() const { return {Sequential{events_}, hooks_}; }

// ---- manager ------------------------------------------------------------

RewardManager::RewardManager(RewardConfig config) : config_(std::move(config)) { root_ = build(config_); }

RewardManager::Node RewardManager::build(const RewardConfig& c)
{
    Node n;
    if (const auto* list = event_list(c)) n.fired.assign(list->size(), false);
    if (const auto* g = std::get_if<Grouped>(&c.node))
        for (const auto& child : g->children) n.children.push_back(build(child));
    return n;
}

void RewardManager::clear(Node& n)
{
    std::fill(n.fired.begin(), n.fired.end(), false);
    n.next = 0;
    n.complete = false;
    for (auto& c : n.children) clear(c);
}

void RewardManager::reset() { clear(root_); }

double RewardManager::feed(const RewardConfig& c, Node& n, const std::vector<sim::Event>& events)
{
    double reward = 0;
    std::visit(overloaded{
                   [&](const Grouped& g) {
                       bool all = true;
                       bool any = false;
                       for (std::size_t i = 0; i < n.children.size(); ++i) {
                           Node& child = n.children[i];
                           reward += feed(g.children[i], child, events);
                           all = all && child.complete;
                           any = any || child.complete;
                       }
                       if (g.combinator == Combinator::All ? all : any) n.complete = true;
                   },
                   [&](const Sequential& s) {
                       for (const auto& e : events) {
                           if (n.next >= s.events.size()) break;
                           if (!s.events[n.next].match.matches(e)) continue;
                           reward += s.events[n.next].reward;
                           n.fired[n.next] = true;
                           ++n.next;
                       }
                       if (!s.events.empty() && n.next == s.events.size()) n.complete = true;
                   },
                   [&](const auto&) {
                       const auto& specs = *event_list(c);
                       bool sufficient = false;
                       for (const auto& e : events)
                           for (std::size_t i = 0; i < specs.size(); ++i) {
                               const EventSpec& spec = specs[i];
                               if (!spec.match.matches(e)) continue;
                               if (n.fired[i] && !spec.repeatable) continue;
                               reward += spec.reward;
                               n.fired[i] = true;
                               sufficient = sufficient || spec.terminal_sufficient;
                           }
                       bool any_required = false;
                       bool all_required = true;
                       for (std::size_t i = 0; i < specs.size(); ++i)
                           if (specs[i].terminal_required) {
                               any_required = true;
                               all_required = all_required && n.fired[i];
                           }
                       if (sufficient || (any_required && all_required)) n.complete = true;
                   },
               },
               c.node);
    return reward;
}

Outcome RewardManager::evaluate(const StepInput& in)
{
    static const std::vector<sim::Event> kNone;
    Outcome out;
    const bool was_complete = root_.complete;
    out.reward = feed(config_, root_, in.events ? *in.events : kNone);
    if (!in.time_advanced) out.reward += kStepPenalty;
    if (in.prev && in.action && in.next)
        for (const auto& hook : config_.hooks) out.reward += hook(*in.prev, *in.action, *in.next);
    out.success = root_.complete && !was_complete;
    out.done = root_.complete || in.died || in.engine_done || (in.max_steps > 0 && in.step_count >= in.max_steps);
    return out;
}

}  // namespace hackbox::reward
