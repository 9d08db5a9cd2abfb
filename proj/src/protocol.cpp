#include "hackbox/protocol.hpp"

#include <istream>
#include <ostream>

#include "hackbox/dsl/errors.hpp"
#include "hackbox/gen/compiler.hpp"

namespace hackbox::protocol {

using nlohmann::json;

namespace {

/// Error carrying a protocol error code.
class Failure : public std::runtime_error {
public:
    Failure(std::string code, const std::string& message) : std::runtime_error(message), code_(std::move(code)) {}
    [[nodiscard]] const std::string& code() const { return code_; }

private:
    std::string code_;
};

template <class T>
json grid_json(const Grid<T>& g)
{
    json rows = json::array();
    for (int y = 0; y < g.height(); ++y) {
        json row = json::array();
        for (int x = 0; x < g.width(); ++x) row.push_back(g.at(x, y));
        rows.push_back(std::move(row));
    }
    return rows;
}

const json& field(const json& req, const char* name)
{
    if (!req.contains(name)) throw Failure("bad_request", std::string("missing field '") + name + "'");
    return req.at(name);
}

reward::EventOptions options_from(const json& e)
{
    reward::EventOptions o;
    o.reward = e.value("reward", o.reward);
    o.repeatable = e.value("repeatable", o.repeatable);
    o.terminal_required = e.value("terminal_required", o.terminal_required);
    o.terminal_sufficient = e.value("terminal_sufficient", o.terminal_sufficient);
    return o;
}

}  // namespace

json observation_json(const sim::Observation& o)
{
    json out = json::object();
    if (o.chars) out["chars"] = grid_json(*o.chars);
    if (o.colors) out["colors"] = grid_json(*o.colors);
    if (o.ids) out["ids"] = grid_json(*o.ids);
    if (o.chars_crop) out["chars_crop"] = grid_json(*o.chars_crop);
    if (o.colors_crop) out["colors_crop"] = grid_json(*o.colors_crop);
    if (o.ids_crop) out["ids_crop"] = grid_json(*o.ids_crop);
    if (o.stats) out["stats"] = *o.stats;
    if (o.message) {
        std::string text;
        for (std::uint8_t c : *o.message) {
            if (c == 0) break;
            text += static_cast<char>(c);
        }
        out["message"] = text;
    }
    if (o.screen_descriptions) out["screen_descriptions"] = grid_json(*o.screen_descriptions);
    if (o.inv_letters) out["inv_letters"] = *o.inv_letters;
    if (o.inv_strs) out["inv_strs"] = *o.inv_strs;
    return out;
}

json event_json(const sim::Event& e)
{
    return {{"kind", sim::event_kind_name(e.kind)}, {"name", e.name}, {"pos", {e.pos.x, e.pos.y}}};
}

reward::RewardConfig reward_from_json(const json& j)
{
    if (!j.is_object()) throw std::invalid_argument("reward must be an object");
    const std::string kind = j.value("kind", "flat");
    if (kind == "default") return {};
    reward::EventListBuilder b;
    for (const json& e : j.value("events", json::array())) {
        const std::string ev = e.at("event").get<std::string>();
        const std::string name = e.value("name", "");
        const reward::EventOptions o = options_from(e);
        if (ev == "eat") b.add_eat_event(name, o);
        else if (ev == "wield") b.add_wield_event(name, o);
        else if (ev == "wear") b.add_wear_event(name, o);
        else if (ev == "amulet") b.add_amulet_event(o);
        else if (ev == "puton") b.add_puton_event(name, o);
        else if (ev == "quaff") b.add_quaff_event(name, o);
        else if (ev == "pickup") b.add_pickup_event(name, o);
        else if (ev == "kill") b.add_kill_event(name, o);
        else if (ev == "location") b.add_location_event(name, o);
        else if (ev == "coordinate") b.add_coordinate_event({e.at("x").get<int>(), e.at("y").get<int>()}, o);
        else if (ev == "pray") b.add_pray_event(o);
        else if (ev == "trap") b.add_trap_event(name, o);
        else throw std::invalid_argument("unknown reward event '" + ev + "'");
    }
    if (kind == "flat") return b.flat();
    if (kind == "sequential") return b.sequential();
    throw std::invalid_argument("unknown reward kind '" + kind + "'");
}

tasks::Overrides overrides_from_json(const json& j)
{
    tasks::Overrides o;
    if (j.is_null()) return o;
    if (!j.is_object()) throw std::invalid_argument("overrides must be an object");
    for (const auto& [key, value] : j.items()) {
        if (key == "des") o.des = value.get<std::string>();
        else if (key == "max_steps") o.max_steps = value.get<int>();
        else if (key == "obs_keys") o.obs_keys = value.get<std::vector<std::string>>();
        else if (key == "crop") o.crop = value.get<int>();
        else if (key == "reward") o.reward = reward_from_json(value);
        else throw std::invalid_argument("unknown override '" + key + "'");
    }
    return o;
}

json Session::make(const json& req)
{
    const std::string id = field(req, "task").get<std::string>();
    tasks::Overrides ov;
    try {
        ov = overrides_from_json(req.value("overrides", json()));
    } catch (const std::exception& e) {
        throw Failure("bad_override", e.what());
    }
    auto env = std::make_unique<Env>(tasks::make_task(id, ov));
    json actions = json::array();
    for (const auto& a : env->spec().actions) actions.push_back(sim::action_name(a));
    const long long h = next_++;
    json out{{"ok", true}, {"env", h}, {"actions", actions}, {"obs_keys", env->spec().obs_keys}};
    envs_.emplace(h, std::move(env));
    return out;
}

Env& Session::env_for(const json& req)
{
    const json& h = field(req, "env");
    if (!h.is_number_integer()) throw Failure("bad_request", "env must be an integer handle");
    const auto it = envs_.find(h.get<long long>());
    if (it == envs_.end()) throw Failure("unknown_env", "no environment with handle " + h.dump());
    return *it->second;
}

json Session::handle(const json& req)
{
    try {
        if (!req.is_object()) throw Failure("bad_request", "request must be a JSON object");
        const std::string cmd = field(req, "cmd").get<std::string>();
        if (cmd == "make") return make(req);
        if (cmd == "reset") {
            Env& env = env_for(req);
            const json& seed = field(req, "seed");
            if (!seed.is_number_integer()) throw Failure("bad_request", "seed must be an integer");
            return {{"ok", true}, {"obs", observation_json(env.reset(seed.get<std::uint64_t>()))}};
        }
        if (cmd == "step") {
            Env& env = env_for(req);
            const json& a = field(req, "action");
            Transition t;
            if (a.is_number_integer()) {
                const auto i = a.get<long long>();
                if (i < 0) throw IllegalAction("negative action index");
                t = env.step(static_cast<std::size_t>(i));
            } else if (a.is_string()) {
                const auto parsed = sim::parse_action(a.get<std::string>());
                if (!parsed) throw IllegalAction("unknown action name " + a.dump());
                t = env.step(*parsed);
            } else {
                throw Failure("bad_request", "action must be a name or an index");
            }
            json events = json::array();
            for (const auto& e : t.events) events.push_back(event_json(e));
            json info{{"events", events}, {"time_advanced", t.time_advanced}};
            if (t.done) info["end_reason"] = t.end_reason;
            return {{"ok", true}, {"obs", observation_json(t.obs)}, {"reward", t.reward}, {"done", t.done}, {"info", info}};
        }
        if (cmd == "close") {
            env_for(req);
            envs_.erase(req.at("env").get<long long>());
            return {{"ok", true}};
        }
        throw Failure("unknown_command", "unknown command '" + cmd + "'");
    } catch (const Failure& e) {
        return {{"ok", false}, {"error", e.code()}, {"message", e.what()}};
    } catch (const json::exception& e) {
        return {{"ok", false}, {"error", "bad_request"}, {"message", e.what()}};
    } catch (const tasks::UnknownTask& e) {
        return {{"ok", false}, {"error", "unknown_task"}, {"message", e.what()}};
    } catch (const IllegalAction& e) {
        return {{"ok", false}, {"error", "illegal_action"}, {"message", e.what()}};
    } catch (const NotReset& e) {
        return {{"ok", false}, {"error", "not_reset"}, {"message", e.what()}};
    } catch (const sim::EpisodeAlreadyDone& e) {
        return {{"ok", false}, {"error", "episode_done"}, {"message", e.what()}};
    } catch (const sim::UnknownKey& e) {
        return {{"ok", false}, {"error", "bad_override"}, {"message", e.what()}};
    } catch (const dsl::DslError& e) {
        return {{"ok", false}, {"error", "des_error"}, {"message", e.what()}};
    } catch (const gen::CompileError& e) {
        return {{"ok", false}, {"error", "des_error"}, {"message", e.what()}};
    } catch (const tasks::GenerationFailed& e) {
        return {{"ok", false}, {"error", "generation_failed"}, {"message", e.what()}};
    } catch (const std::invalid_argument& e) {
        return {{"ok", false}, {"error", "bad_request"}, {"message", e.what()}};
    } catch (const std::exception& e) {
        return {{"ok", false}, {"error", "internal"}, {"message", e.what()}};
    }
}

std::string Session::handle_line(std::string_view line)
{
    json req;
    try {
        req = json::parse(line);
    } catch (const json::parse_error& e) {
        return json{{"ok", false}, {"error", "bad_request"}, {"message", e.what()}}.dump();
    }
    return handle(req).dump();
}

void serve(std::istream& in, std::ostream& out)
{
    out << json{{"protocol", kVersion}}.dump() << "\n" << std::flush;
    Session session;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        out << session.handle_line(line) << "\n" << std::flush;
    }
}

}  // namespace hackbox::protocol
