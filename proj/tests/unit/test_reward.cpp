#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "hackbox/reward.hpp"
#include "hackbox/rng.hpp"
#include "hackbox/sim/world.hpp"
#include "test_util.hpp"

using namespace hackbox;
using namespace hackbox::reward;
using namespace hackbox::sim;
using hackbox::testing::blueprint;
using hackbox::testing::object;

namespace {

Outcome drive(RewardManager& rm, WorldState& s, const Action& a, int step_count = 1, int max_steps = 1000)
{
    const WorldState prev = s;
    const StepResult r = step(s, a);
    StepInput in;
    in.events = &r.events;
    in.time_advanced = r.time_advanced;
    in.died = !s.agent.alive;
    in.engine_done = s.done.has_value();
    in.step_count = step_count;
    in.max_steps = max_steps;
    in.prev = &prev;
    in.action = &a;
    in.next = &s;
    return rm.evaluate(in);
}

Outcome feed(RewardManager& rm, std::vector<Event> events, bool time_advanced = true)
{
    StepInput in;
    in.events = &events;
    in.time_advanced = time_advanced;
    return rm.evaluate(in);
}

Event ev(EventKind k, std::string name = "") { return {k, std::move(name), {0, 0}}; }

constexpr std::array<EventKind, 3> kKinds{EventKind::Ate, EventKind::Wielded, EventKind::Prayed};

}  // namespace

TEST_CASE("default reward: down staircase is +1 and terminal")
{
    WorldState s = reset(blueprint({"@>"}), 0);
    RewardManager rm({});
    const Outcome o = drive(rm, s, Action::move(Dir::E));
    CHECK(o.reward == doctest::Approx(1.0));
    CHECK(o.done);
    CHECK(o.success);
}

TEST_CASE("default reward: bumping a wall costs the step penalty")
{
    WorldState s = reset(blueprint({"|@."}), 0);
    RewardManager rm({});
    const Outcome o = drive(rm, s, Action::move(Dir::W));
    CHECK(o.reward == doctest::Approx(-0.001));
    CHECK_FALSE(o.done);
    const Outcome moved = drive(rm, s, Action::move(Dir::E));
    CHECK(moved.reward == 0.0);
}

TEST_CASE("default reward: death ends the episode with no reward")
{
    WorldState s = reset(blueprint({"@L."}), 0);
    RewardManager rm({});
    const Outcome o = drive(rm, s, Action::move(Dir::E));
    CHECK(o.done);
    CHECK_FALSE(o.success);
    CHECK(o.reward == 0.0);
}

TEST_CASE("timeout ends the episode without a bonus")
{
    WorldState s = reset(blueprint({"@..."}), 0);
    RewardManager rm({});
    CHECK_FALSE(drive(rm, s, Action::move(Dir::E), 1, 2).done);
    const Outcome o = drive(rm, s, Action::move(Dir::E), 2, 2);
    CHECK(o.done);
    CHECK_FALSE(o.success);
    CHECK(o.reward == 0.0);
}

TEST_CASE("sink penalty with two required item events")
{
    EventListBuilder b;
    b.add_eat_event("apple").add_wield_event("dagger").add_location_event("sink", {-1.0, false, false, false});
    RewardManager rm(b.flat());
    WorldState s = reset(blueprint({"@.K"}, {object("dagger", {0, 0}), object("apple", {1, 0})}), 0);

    Outcome o = drive(rm, s, Action::simple(ActionKind::PickUp));
    CHECK(o.reward == 0.0);
    o = drive(rm, s, Action::move(Dir::E));
    o = drive(rm, s, Action::simple(ActionKind::Eat));
    CHECK(o.reward == doctest::Approx(-0.001));
    o = drive(rm, s, Action::confirm(true));
    CHECK(o.reward == doctest::Approx(1.0));
    CHECK_FALSE(o.done);

    o = drive(rm, s, Action::move(Dir::E));
    CHECK(o.reward == doctest::Approx(-1.0));
    CHECK_FALSE(o.done);

    drive(rm, s, Action::simple(ActionKind::Wield));
    o = drive(rm, s, Action::select('a'));
    CHECK(o.reward == doctest::Approx(1.0));
    CHECK(o.done);
    CHECK(o.success);
}

TEST_CASE("maze explore: apples then stairs return 1.5")
{
    EventListBuilder b;
    b.add_eat_event("apple", {0.5, true, false, false}).add_location_event("staircase down", {1.0, false, false, true});
    RewardManager rm(b.flat());
    WorldState s = reset(blueprint({"@.>"}, {object("apple", {1, 0})}), 0);
    double total = 0;
    Outcome o = drive(rm, s, Action::move(Dir::E));
    total += o.reward;
    drive(rm, s, Action::simple(ActionKind::Eat));
    total += kStepPenalty;
    o = drive(rm, s, Action::confirm(true));
    CHECK(o.reward == doctest::Approx(0.5));
    total += o.reward;
    o = drive(rm, s, Action::move(Dir::E));
    total += o.reward;
    CHECK(o.done);
    CHECK(total == doctest::Approx(1.5 - 0.001));
}

TEST_CASE("builder defaults and name resolution")
{
    EventListBuilder b;
    b.add_eat_event("apple");
    const RewardConfig c = b.flat();
    const auto& specs = std::get<Flat>(c.node).events;
    REQUIRE(specs.size() == 1);
    CHECK(specs[0].reward == 1.0);
    CHECK(specs[0].terminal_required);
    CHECK_FALSE(specs[0].terminal_sufficient);
    CHECK_FALSE(specs[0].repeatable);
    CHECK(specs[0].match.matches(ev(EventKind::Ate, "apple")));
    CHECK_FALSE(specs[0].match.matches(ev(EventKind::Ate, "lichen corpse")));
    CHECK_FALSE(specs[0].match.matches(ev(EventKind::Quaffed, "apple")));

    CHECK_THROWS_AS(EventListBuilder().add_eat_event("dragon fruit"), UnknownEntity);
    CHECK_THROWS_AS(EventListBuilder().add_kill_event("balrog"), UnknownEntity);
    CHECK_THROWS_AS(EventListBuilder().add_location_event("throne"), UnknownEntity);
    CHECK_THROWS_AS(EventListBuilder().add_trap_event("pit"), UnknownEntity);
    CHECK_NOTHROW(EventListBuilder().add_kill_event("newt").add_amulet_event().add_pray_event());
}

TEST_CASE("coordinate events match only their cell")
{
    EventListBuilder b;
    b.add_coordinate_event({3, 4});
    RewardManager rm(b.flat());
    Event e{EventKind::ReachedCoord, "", {3, 5}};
    CHECK(feed(rm, {e}).reward == 0.0);
    e.pos = {3, 4};
    const Outcome o = feed(rm, {e});
    CHECK(o.reward == 1.0);
    CHECK(o.done);
}

TEST_CASE("empty flat config never terminates on its own")
{
    RewardManager rm(EventListBuilder().flat());
    for (int i = 0; i < 50; ++i) {
        const Outcome o = feed(rm, {ev(EventKind::Ate, "apple"), ev(EventKind::ReachedStair, "down")});
        CHECK_FALSE(o.done);
        CHECK(o.reward == 0.0);
    }
}

TEST_CASE("flat termination matches a truth-table oracle")
{
    // Every combination of (required, sufficient, repeatable) for three specs
    // and every event sequence of length up to three.
    const std::array<double, 3> rewards{1.0, 10.0, 100.0};
    int cases = 0;
    for (int flags = 0; flags < 512; ++flags) {
        std::array<bool, 3> req{}, suf{}, rep{};
        EventListBuilder b;
        for (int i = 0; i < 3; ++i) {
            const int f = (flags >> (3 * i)) & 7;
            req[i] = f & 1;
            suf[i] = f & 2;
            rep[i] = f & 4;
            b.add_event({kKinds[i], "", std::nullopt}, {rewards[i], rep[i], req[i], suf[i]});
        }
        const RewardConfig config = b.flat();
        for (int len = 0; len <= 3; ++len) {
            int total = 1;
            for (int i = 0; i < len; ++i) total *= 3;
            for (int code = 0; code < total; ++code) {
                RewardManager rm(config);
                std::array<bool, 3> seen{};
                bool oracle_done = false;
                int c = code;
                for (int t = 0; t < len; ++t, c /= 3) {
                    const int k = c % 3;
                    double expected = (!seen[k] || rep[k]) ? rewards[k] : 0.0;
                    seen[k] = true;
                    bool all_req = true;
                    bool any_req = false;
                    bool any_suf = false;
                    for (int i = 0; i < 3; ++i) {
                        any_req = any_req || req[i];
                        if (req[i]) all_req = all_req && seen[i];
                        any_suf = any_suf || (seen[i] && suf[i]);
                    }
                    oracle_done = oracle_done || any_suf || (any_req && all_req);
                    const Outcome o = feed(rm, {ev(kKinds[k])});
                    REQUIRE(o.reward == expected);
                    REQUIRE(o.done == oracle_done);
                    ++cases;
                }
            }
        }
    }
    CHECK(cases == 512 * (3 + 2 * 9 + 3 * 27));
}

TEST_CASE("sequential configs ignore out-of-order events")
{
    EventListBuilder b;
    b.add_event({EventKind::Ate, "", std::nullopt}, {1.0})
        .add_event({EventKind::Wielded, "", std::nullopt}, {10.0})
        .add_event({EventKind::Prayed, "", std::nullopt}, {100.0});
    const RewardConfig config = b.sequential();

    Rng rng(3);
    for (int trial = 0; trial < 500; ++trial) {
        RewardManager rm(config);
        std::size_t next = 0;
        for (int t = 0; t < 8; ++t) {
            const std::size_t k = rng.index(3);
            const double expected = k == next && next < 3 ? std::array<double, 3>{1, 10, 100}[k] : 0.0;
            if (k == next && next < 3) ++next;
            const Outcome o = feed(rm, {ev(kKinds[k])});
            REQUIRE(o.reward == expected);
            REQUIRE(o.done == (next == 3));
        }
    }

    RewardManager rm(config);
    CHECK(feed(rm, {ev(EventKind::Prayed), ev(EventKind::Wielded)}).reward == 0.0);
    CHECK(feed(rm, {ev(EventKind::Ate), ev(EventKind::Wielded), ev(EventKind::Prayed)}).reward == 111.0);
}

TEST_CASE("grouped configs combine child completion")
{
    auto child = [](EventKind k) {
        EventListBuilder b;
        b.add_event({k, "", std::nullopt});
        return b.flat();
    };
    RewardConfig all{Grouped{{child(EventKind::Ate), child(EventKind::Wielded)}, Combinator::All}, {}};
    RewardConfig any{Grouped{{child(EventKind::Ate), child(EventKind::Wielded)}, Combinator::Any}, {}};
    RewardManager ra(all), rn(any);

    Outcome o = feed(ra, {ev(EventKind::Ate)});
    CHECK(o.reward == 1.0);
    CHECK_FALSE(o.done);
    o = feed(ra, {ev(EventKind::Wielded)});
    CHECK(o.done);

    o = feed(rn, {ev(EventKind::Wielded)});
    CHECK(o.reward == 1.0);
    CHECK(o.done);

    RewardConfig nested{Grouped{{all, child(EventKind::Prayed)}, Combinator::Any}, {}};
    RewardManager rm(nested);
    CHECK_FALSE(feed(rm, {ev(EventKind::Ate)}).done);
    CHECK(feed(rm, {ev(EventKind::Wielded)}).done);
}

TEST_CASE("custom hooks run every step with both states")
{
    int calls = 0;
    EventListBuilder b;
    b.add_custom([&](const WorldState& prev, const Action&, const WorldState& next) {
        ++calls;
        return next.agent.pos.x > prev.agent.pos.x ? 0.25 : 0.0;
    });
    RewardManager rm(b.flat());
    WorldState s = reset(blueprint({"|@.."}), 0);
    CHECK(drive(rm, s, Action::move(Dir::E)).reward == 0.25);
    CHECK(drive(rm, s, Action::move(Dir::W)).reward == 0.0);
    CHECK(drive(rm, s, Action::move(Dir::W)).reward == doctest::Approx(-0.001));
    CHECK(calls == 3);
}

TEST_CASE("reset restores the initial reward state and replays identically")
{
    EventListBuilder b;
    b.add_event({EventKind::Ate, "", std::nullopt}, {1.0, true}).add_event({EventKind::Prayed, "", std::nullopt});
    RewardManager rm(b.flat());
    Rng rng(9);
    std::vector<int> script;
    for (int i = 0; i < 40; ++i) script.push_back(static_cast<int>(rng.index(3)));
    auto run = [&] {
        std::vector<std::pair<double, bool>> out;
        rm.reset();
        for (int k : script) {
            const Outcome o = feed(rm, {ev(kKinds[static_cast<std::size_t>(k)])}, k != 1);
            out.emplace_back(o.reward, o.done);
        }
        return out;
    };
    CHECK(run() == run());
}
