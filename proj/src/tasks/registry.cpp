#include <algorithm>

#include "common.hpp"
#include "hackbox/dsl/parser.hpp"
#include "hackbox/gen/compiler.hpp"

namespace hackbox::tasks {

namespace {

const std::vector<detail::Entry>& registry()
{
    static const std::vector<detail::Entry> entries = [] {
        std::vector<detail::Entry> out;
        detail::register_navigation(out);
        detail::register_skills(out);
        detail::register_ported(out);
        return out;
    }();
    return entries;
}

std::uint64_t attempt_seed(std::uint64_t seed, int attempt)
{
    if (attempt == 0) return seed;
    Rng r(seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(attempt)));
    return r.next();
}

void choose_start(LevelBlueprint& bp, std::uint64_t seed)
{
    Mask taken(bp.terrain.width(), bp.terrain.height(), 0);
    for (const auto& p : bp.placements)
        if (p.kind == PlacementKind::Monster || p.kind == PlacementKind::Trap ||
            (p.kind == PlacementKind::Object && p.name == "boulder"))
            taken[p.pos] = 1;
    std::vector<Coord> cells;
    for (int y = 0; y < bp.terrain.height(); ++y)
        for (int x = 0; x < bp.terrain.width(); ++x)
            if (is_open_ground(bp.terrain.at(x, y)) && !taken.at(x, y)) cells.push_back({x, y});
    if (cells.empty()) return;
    Rng r(seed ^ 0xA5A5A5A5DEADBEEFULL);
    bp.start_pos = cells[r.index(cells.size())];
}

}  // namespace

const std::vector<std::string>& list_tasks()
{
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> out;
        for (const auto& e : registry()) out.push_back(e.id);
        return out;
    }();
    return ids;
}

EnvSpec make_task(std::string_view id, const Overrides& overrides)
{
    const auto& reg = registry();
    const auto it = std::find_if(reg.begin(), reg.end(), [&](const detail::Entry& e) { return e.id == id; });
    if (it == reg.end()) throw UnknownTask(std::string(id));
    EnvSpec spec = it->make();
    if (overrides.des) {
        spec.des_source = [text = *overrides.des](std::uint64_t) { return text; };
        spec.requirements.reset();
    }
    if (overrides.reward) spec.reward = *overrides.reward;
    if (overrides.max_steps) {
        if (*overrides.max_steps < 1) throw std::invalid_argument("max_steps must be positive");
        spec.max_steps = *overrides.max_steps;
    }
    if (overrides.obs_keys) {
        for (const auto& k : *overrides.obs_keys)
            if (std::find(sim::kObservationKeys.begin(), sim::kObservationKeys.end(), k) == sim::kObservationKeys.end())
                throw sim::UnknownKey(k);
        spec.obs_keys = *overrides.obs_keys;
    }
    if (overrides.crop) {
        if (*overrides.crop < 1 || *overrides.crop % 2 == 0) throw std::invalid_argument("crop size must be odd and positive");
        spec.crop = *overrides.crop;
    }
    return spec;
}

EnvSpec des_task(std::string id, std::string des_text)
{
    return detail::skill_spec(std::move(id), [text = std::move(des_text)](std::uint64_t) { return text; }, 200);
}

LevelBlueprint sample_level(const EnvSpec& spec, std::uint64_t seed)
{
    std::string last_issue;
    for (int attempt = 0; attempt < kMaxResamples; ++attempt) {
        const std::uint64_t s = attempt_seed(seed, attempt);
        const dsl::DesDocument doc = dsl::parse_document(spec.des_source(s));
        LevelBlueprint bp = gen::compile(doc, s);
        if (!bp.start_pos) choose_start(bp, s);
        if (!spec.requirements) return bp;
        const gen::ValidationReport report = gen::validate_blueprint(bp, *spec.requirements);
        if (report.ok()) return bp;
        last_issue = report.issues.front();
    }
    throw GenerationFailed(spec.id + ": no valid level after " + std::to_string(kMaxResamples) + " attempts (" +
                           last_issue + ")");
}

}  // namespace hackbox::tasks
