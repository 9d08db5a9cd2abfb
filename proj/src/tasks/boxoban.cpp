#include <map>
#include <mutex>
#include <sstream>

#include "boxoban_data.hpp"
#include "common.hpp"
#include "hackbox/dsl/parser.hpp"
#include "hackbox/gen/compiler.hpp"

namespace hackbox::tasks {

namespace {

constexpr std::string_view kBoxobanChars = "#$.@*+ ";

std::string_view trim_right(std::string_view s)
{
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

bool is_header(std::string_view line) { return !line.empty() && line.front() == ';'; }

int header_index(std::string_view line, int fallback)
{
    line.remove_prefix(1);
    try {
        return std::stoi(std::string(line));
    } catch (const std::exception&) {
        throw MalformedLevel(fallback, "bad header '; " + std::string(line) + "'");
    }
}

void check_level(const BoxobanLevel& lv)
{
    if (static_cast<int>(lv.rows.size()) != kBoxobanSize)
        throw MalformedLevel(lv.index, "expected " + std::to_string(kBoxobanSize) + " rows, got " + std::to_string(lv.rows.size()));
    int players = 0, boxes = 0, goals = 0;
    for (const auto& row : lv.rows) {
        if (static_cast<int>(row.size()) != kBoxobanSize)
            throw MalformedLevel(lv.index, "row '" + row + "' is not " + std::to_string(kBoxobanSize) + " wide");
        for (char c : row) {
            if (kBoxobanChars.find(c) == std::string_view::npos)
                throw MalformedLevel(lv.index, std::string("unknown cell '") + c + "'");
            players += c == '@' || c == '+';
            boxes += c == '$' || c == '*';
            goals += c == '.' || c == '*' || c == '+';
        }
    }
    if (players != 1) throw MalformedLevel(lv.index, "expected one player, got " + std::to_string(players));
    if (boxes == 0) throw MalformedLevel(lv.index, "no boxes");
    if (boxes != goals)
        throw MalformedLevel(lv.index, std::to_string(boxes) + " boxes but " + std::to_string(goals) + " goals");
}

}  // namespace

std::vector<BoxobanLevel> parse_boxoban(std::string_view text)
{
    std::vector<BoxobanLevel> out;
    std::optional<BoxobanLevel> cur;
    auto finish = [&] {
        if (!cur) return;
        check_level(*cur);
        out.push_back(std::move(*cur));
        cur.reset();
    };
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        const std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        const std::string_view line = trim_right(raw);
        if (is_header(line)) {
            finish();
            cur = BoxobanLevel{header_index(line, static_cast<int>(out.size())), {}};
        } else if (line.empty()) {
            finish();
        } else {
            if (!cur) throw MalformedLevel(static_cast<int>(out.size()), "rows before a '; <index>' header");
            // Trailing floor is often stripped from corpus rows.
            std::string row(line);
            if (row.size() < static_cast<std::size_t>(kBoxobanSize)) row.resize(kBoxobanSize, ' ');
            cur->rows.push_back(std::move(row));
        }
    }
    finish();
    return out;
}

std::string boxoban_des(const BoxobanLevel& level)
{
    check_level(level);
    detail::Sketch sk(kBoxobanSize, kBoxobanSize);
    std::vector<std::string> d;
    Coord start{};
    auto wall = [&](int x, int y) {
        return x >= 0 && y >= 0 && x < kBoxobanSize && y < kBoxobanSize &&
               level.rows[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] == '#';
    };
    for (int y = 0; y < kBoxobanSize; ++y)
        for (int x = 0; x < kBoxobanSize; ++x) {
            const char c = level.rows[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)];
            const bool goal = c == '.' || c == '*' || c == '+';
            if (c == '#') sk.set({x, y}, wall(x - 1, y) || wall(x + 1, y) ? '-' : '|');
            else sk.set({x, y}, goal ? '{' : '.');
            if (c == '$' || c == '*') d.push_back("OBJECT:('`',\"boulder\")," + detail::coord({x, y}));
            if (c == '@' || c == '+') start = {x, y};
        }
    d.push_back("BRANCH:" + detail::rect({start.x, start.y, start.x, start.y}) + ",(0,0,0,0)");
    return detail::maze_des(sk, true, d);
}

std::vector<LevelBlueprint> load_boxoban(std::string_view text)
{
    std::vector<LevelBlueprint> out;
    for (const auto& lv : parse_boxoban(text)) out.push_back(gen::compile(dsl::parse_document(boxoban_des(lv)), 0));
    return out;
}

const std::vector<BoxobanLevel>& boxoban_corpus(std::string_view split)
{
    static const std::map<std::string, std::string_view, std::less<>> sources{
        {"unfiltered", data::kBoxobanUnfiltered}, {"medium", data::kBoxobanMedium}, {"hard", data::kBoxobanHard}};
    static std::map<std::string, std::vector<BoxobanLevel>, std::less<>> cache;
    static std::mutex mu;
    const auto src = sources.find(split);
    if (src == sources.end()) throw std::invalid_argument("unknown boxoban split: " + std::string(split));
    const std::lock_guard lock(mu);
    auto it = cache.find(split);
    if (it == cache.end()) it = cache.emplace(std::string(split), parse_boxoban(src->second)).first;
    return it->second;
}

namespace detail {

namespace {

reward::RewardConfig boxoban_reward()
{
    reward::EventListBuilder b;
    b.add_event(reward::EventMatcher{sim::EventKind::GoalsCovered, "", std::nullopt});
    return b.flat();
}

}  // namespace

void register_ported(std::vector<Entry>& out)
{
    struct MultiRoomTask {
        const char* suffix;
        MultiRoomVariant variant;
    };
    for (int n : {2, 4}) {
        for (const MultiRoomTask& t :
             {MultiRoomTask{"", {}}, MultiRoomTask{"-Monster", {true, false, false}},
              MultiRoomTask{"-Locked", {false, true, false}}, MultiRoomTask{"-Lava", {false, false, true}},
              MultiRoomTask{"-Extreme", MultiRoomVariant::extreme()}}) {
            const std::string id = "MultiRoom-N" + std::to_string(n) + t.suffix;
            const MultiRoomVariant v = t.variant;
            out.push_back({id, [=] {
                               EnvSpec s = navigation_spec(
                                   id, [n, v](std::uint64_t seed) { return gen_multiroom(n, 5, v, seed); }, n * 50);
                               if (v.locked) s.actions.push_back(sim::Action::simple(sim::ActionKind::Kick));
                               gen::Requirements r;
                               r.pushes = false;
                               s.requirements = r;
                               return s;
                           }});
        }
    }
    for (const auto& [name, split] : {std::pair{"Boxoban-Unfiltered", "unfiltered"}, std::pair{"Boxoban-Medium", "medium"},
                                      std::pair{"Boxoban-Hard", "hard"}}) {
        const std::string id = name;
        const std::string which = split;
        out.push_back({id, [=] {
                           EnvSpec s = navigation_spec(
                               id,
                               [which](std::uint64_t seed) {
                                   const auto& levels = boxoban_corpus(which);
                                   if (levels.empty()) throw GenerationFailed("boxoban corpus '" + which + "' is empty");
                                   return boxoban_des(levels[seed % levels.size()]);
                               },
                               400);
                           s.actions = {sim::Action::move(Dir::N), sim::Action::move(Dir::E), sim::Action::move(Dir::S),
                                        sim::Action::move(Dir::W)};
                           s.reward = boxoban_reward();
                           return s;
                       }});
    }
}

}  // namespace detail

}  // namespace hackbox::tasks
