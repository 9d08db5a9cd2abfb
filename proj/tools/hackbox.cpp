#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hackbox/dsl/parser.hpp"
#include "hackbox/env.hpp"
#include "hackbox/gen/compiler.hpp"
#include "hackbox/gen/validate.hpp"
#include "hackbox/protocol.hpp"
#include "hackbox/rng.hpp"
#include "hackbox/tasks.hpp"

using namespace hackbox;
using nlohmann::json;

namespace {

/// Bad input from the user: exit code 1.
class UserError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Globals {
    std::uint64_t seed = 0;
    bool quiet = false;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UserError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool is_task(const std::string& target)
{
    const auto& ids = tasks::list_tasks();
    return std::find(ids.begin(), ids.end(), target) != ids.end();
}

tasks::EnvSpec resolve(const std::string& target)
{
    if (is_task(target)) return tasks::make_task(target);
    if (std::filesystem::is_regular_file(target)) return tasks::des_task(target, read_file(target));
    throw UserError("'" + target + "' is neither a task id nor a des file");
}

std::vector<std::string> all_keys() { return {sim::kObservationKeys.begin(), sim::kObservationKeys.end()}; }

std::string placement_line(const Placement& p)
{
    std::string line = "  " + std::string(placement_kind_name(p.kind)) + " " + p.name + " at " + to_string(p.pos);
    if (p.kind == PlacementKind::Monster) {
        if (p.asleep) line += " asleep";
        if (!p.hostile) line += " peaceful";
    }
    if (p.quantity > 1) line += " x" + std::to_string(p.quantity);
    return line;
}

int cmd_compile(const Globals& g, const std::string& path)
{
    const dsl::DesDocument doc = dsl::parse_document(read_file(path));
    const LevelBlueprint bp = gen::compile(doc, g.seed);
    std::cout << "level: " << bp.name << "\n";
    std::cout << "size: " << bp.width << "x" << bp.height << "\n";
    std::cout << "rooms: " << bp.rooms.size() << "\n";
    std::cout << "start: " << (bp.start_pos ? to_string(*bp.start_pos) : std::string("unset")) << "\n";
    for (const auto& s : bp.stairs)
        std::cout << "stair: " << (s.direction == StairDirection::Down ? "down" : "up") << " at " << to_string(s.pos) << "\n";
    std::cout << "monsters: " << bp.count(PlacementKind::Monster) << "\n";
    std::cout << "objects: " << bp.count(PlacementKind::Object) << "\n";
    std::cout << "traps: " << bp.count(PlacementKind::Trap) << "\n";
    std::cout << "features: " << bp.count(PlacementKind::Feature) << "\n";
    if (!g.quiet) {
        for (const auto& p : bp.placements) std::cout << placement_line(p) << "\n";
        const Rect& f = bp.map_frame;
        const auto rows = render_terrain(bp);
        for (int y = f.y1; y <= f.y2; ++y) std::cout << rows[static_cast<std::size_t>(y)].substr(static_cast<std::size_t>(f.x1), static_cast<std::size_t>(f.x2 - f.x1 + 1)) << "\n";
    }
    return 0;
}

int cmd_sample(const Globals& g, const std::string& target, int count, const std::string& render)
{
    tasks::EnvSpec spec = resolve(target);
    spec.obs_keys = all_keys();
    Env env(spec);
    for (int i = 0; i < count; ++i) {
        const std::uint64_t seed = g.seed + static_cast<std::uint64_t>(i);
        const sim::Observation obs = env.reset(seed);
        if (render == "json") {
            std::cout << json{{"seed", seed}, {"obs", protocol::observation_json(obs)}}.dump() << "\n";
        } else {
            sim::WorldState shown = env.state();
            shown.visible.fill(1);
            shown.remembered.fill(1);
            shown.message = "seed " + std::to_string(seed);
            std::cout << sim::render_ansi(shown) << "\n";
        }
    }
    return 0;
}

/// Single-key bindings for play; full action names are accepted too.
const std::map<std::string, std::string>& key_bindings()
{
    static const std::map<std::string, std::string> keys{
        {"k", "move_n"}, {"u", "move_ne"}, {"l", "move_e"}, {"n", "move_se"}, {"j", "move_s"}, {"b", "move_sw"},
        {"h", "move_w"}, {"y", "move_nw"}, {"s", "search"}, {"K", "kick"},    {"o", "open"},    {"e", "eat"},
        {",", "pickup"}, {"a", "apply"},   {"W", "wear"},   {"w", "wield"},   {"P", "puton"},   {"q", "quaff"},
        {"z", "zap"},    {"p", "pray"},    {"r", "read"},   {"Y", "yes"},     {"N", "no"}};
    return keys;
}

int cmd_play(const Globals& g, const std::string& target)
{
    Env env(resolve(target));
    env.reset(g.seed);
    std::cout << "keys: hjklyubn move, s search, K kick, o open, e eat, , pickup, a apply, W wear, w wield, P puton, "
                 "q quaff, z zap, p pray, r read, Y/N answer, menu_a.. select, :q quit\n";
    std::cout << sim::render_ansi(env.state());
    std::string line;
    while (std::cout << "> " << std::flush, std::getline(std::cin, line)) {
        if (line == ":q") break;
        if (line.empty()) continue;
        const auto bound = key_bindings().find(line);
        const auto action = sim::parse_action(bound != key_bindings().end() ? bound->second : line);
        if (!action) {
            std::cout << "unknown key '" << line << "'\n";
            continue;
        }
        try {
            const Transition t = env.step(*action);
            std::cout << sim::render_ansi(env.state());
            std::cout << "reward " << t.reward << "  return " << env.episode_return() << "  step " << env.steps() << "\n";
            for (const auto& e : t.events) std::cout << "event: " << sim::to_string(e) << "\n";
            if (t.done) {
                std::cout << "done (" << t.end_reason << ")\n";
                break;
            }
        } catch (const IllegalAction& e) {
            std::cout << e.what() << "\n";
        }
    }
    return 0;
}

int cmd_rollout(const Globals& g, const std::string& target, int episodes, const std::string& policy,
                const std::vector<std::string>& keys, bool as_json)
{
    if (policy != "random") throw UserError("unknown policy '" + policy + "'");
    tasks::EnvSpec spec = resolve(target);
    for (const auto& k : keys)
        if (std::find(sim::kObservationKeys.begin(), sim::kObservationKeys.end(), k) == sim::kObservationKeys.end())
            throw UserError("unknown observation key '" + k + "'");
    spec.obs_keys = keys;
    Env env(spec);
    Rng rng(g.seed ^ 0x9e3779b97f4a7c15ULL);
    long long total_steps = 0;
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < episodes; ++i) {
        const std::uint64_t seed = g.seed + static_cast<std::uint64_t>(i);
        env.reset(seed);
        Transition t;
        std::vector<double> rewards;
        while (!env.done()) {
            t = env.step(rng.index(spec.actions.size()));
            rewards.push_back(t.reward);
        }
        total_steps += env.steps();
        if (as_json) {
            std::cout << json{{"episode", i}, {"seed", seed}, {"return", env.episode_return()}, {"steps", env.steps()},
                              {"end_reason", t.end_reason}, {"rewards", rewards}}
                             .dump()
                      << "\n";
        } else {
            std::cout << "episode " << i << " seed " << seed << " return " << env.episode_return() << " steps "
                      << env.steps() << " end " << t.end_reason << "\n";
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double rate = secs > 0 ? static_cast<double>(total_steps) / secs : 0.0;
    if (!g.quiet) (as_json ? std::cerr : std::cout) << "steps/sec: " << static_cast<long long>(rate) << "\n";
    return 0;
}

std::vector<Coord> check_targets(const tasks::EnvSpec& spec, const LevelBlueprint& bp)
{
    std::vector<Coord> out;
    if (spec.requirements) out = spec.requirements->targets;
    for (const auto& s : bp.stairs)
        if (s.direction == StairDirection::Down) out.push_back(s.pos);
    return out;
}

int cmd_check(const Globals& g, const std::string& target, int seeds)
{
    const tasks::EnvSpec spec = resolve(target);
    int solvable = 0;
    int untargeted = 0;
    for (int i = 0; i < seeds; ++i) {
        const std::uint64_t seed = g.seed + static_cast<std::uint64_t>(i);
        std::string verdict;
        try {
            const LevelBlueprint bp = tasks::sample_level(spec, seed);
            const gen::ValidationReport report = gen::validate_blueprint(bp, gen::Requirements{{}, false, true, 2'000'000});
            const auto targets = check_targets(spec, bp);
            bool ok = report.ok() && bp.start_pos.has_value() && !targets.empty();
            if (targets.empty()) {
                ++untargeted;
                verdict = "no target cells";
            }
            for (const auto& c : targets) {
                if (!ok) break;
                const auto r = gen::solvable(bp, *bp.start_pos, c, true, 2'000'000);
                if (!r) verdict = "search budget exhausted";
                ok = r.value_or(false);
            }
            if (!report.ok()) verdict = report.issues.front();
            else if (!ok && verdict.empty()) verdict = "target unreachable";
            if (ok) ++solvable;
        } catch (const tasks::GenerationFailed& e) {
            verdict = e.what();
        }
        if (!verdict.empty() && !g.quiet) std::cout << "seed " << seed << ": " << verdict << "\n";
    }
    if (untargeted > 0) std::cout << "levels without a target: " << untargeted << "\n";
    std::cout << "solvable: " << solvable << "/" << seeds << "\n";
    return solvable == seeds ? 0 : 1;
}

int cmd_tasks()
{
    for (const auto& id : tasks::list_tasks()) std::cout << id << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"hackbox: des-file gridworld environments"};
    app.require_subcommand(1);
    app.fallthrough();
    app.failure_message(CLI::FailureMessage::help);
    Globals g;
    app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
    app.add_flag("--quiet", g.quiet, "Less output");

    std::string path, target, render = "ansi", policy = "random";
    int count = 1, episodes = 10, seeds = 100;
    bool as_json = false;
    std::vector<std::string> keys{"chars_crop", "colors_crop", "ids_crop"};

    auto* compile = app.add_subcommand("compile", "Parse and compile a des file, print a summary");
    compile->add_option("file", path, "des file")->required();
    auto* sample = app.add_subcommand("sample", "Render seeded instances of a task or des file");
    sample->add_option("target", target, "Task id or des file")->required();
    sample->add_option("--count", count, "Number of instances")->check(CLI::PositiveNumber)->capture_default_str();
    sample->add_option("--render", render, "Output format")->check(CLI::IsMember({"ansi", "json"}))->capture_default_str();
    auto* play = app.add_subcommand("play", "Play a task or des file in the terminal");
    play->add_option("target", target, "Task id or des file")->required();
    auto* rollout = app.add_subcommand("rollout", "Run a policy and report episode returns");
    rollout->add_option("target", target, "Task id or des file")->required();
    rollout->add_option("--episodes", episodes, "Episodes")->check(CLI::PositiveNumber)->capture_default_str();
    rollout->add_option("--policy", policy, "Policy")->check(CLI::IsMember({"random"}))->capture_default_str();
    rollout->add_option("--obs-keys", keys, "Observation keys computed each step")->delimiter(',')->capture_default_str();
    rollout->add_flag("--json", as_json, "One JSON object per episode");
    auto* check = app.add_subcommand("check", "Validation and solvability report");
    check->add_option("target", target, "Task id or des file")->required();
    check->add_option("--seeds", seeds, "Seeds to check")->check(CLI::PositiveNumber)->capture_default_str();
    auto* list = app.add_subcommand("tasks", "List task ids");
    auto* serve = app.add_subcommand("serve", "Environment protocol on stdin/stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*compile) return cmd_compile(g, path);
        if (*sample) return cmd_sample(g, target, count, render);
        if (*play) return cmd_play(g, target);
        if (*rollout) return cmd_rollout(g, target, episodes, policy, keys, as_json);
        if (*check) return cmd_check(g, target, seeds);
        if (*list) return cmd_tasks();
        if (*serve) {
            protocol::serve(std::cin, std::cout);
            return 0;
        }
    } catch (const dsl::DslError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const gen::CompileError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const UserError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const tasks::GenerationFailed& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
