#include "common.hpp"

#include <algorithm>

namespace hackbox::tasks::detail {

namespace {

bool floor_like(char c) { return c != ' ' && c != '-' && c != '|'; }

}  // namespace

Sketch::Sketch(int width, int height, char fill)
    : width_(width), height_(height), rows_(static_cast<std::size_t>(height), std::string(static_cast<std::size_t>(width), fill))
{
}

char Sketch::at(Coord c) const
{
    if (c.x < 0 || c.y < 0 || c.x >= width_ || c.y >= height_) return ' ';
    return rows_[static_cast<std::size_t>(c.y)][static_cast<std::size_t>(c.x)];
}

void Sketch::set(Coord c, char ch)
{
    if (c.x < 0 || c.y < 0 || c.x >= width_ || c.y >= height_) throw std::out_of_range("sketch cell " + to_string(c));
    rows_[static_cast<std::size_t>(c.y)][static_cast<std::size_t>(c.x)] = ch;
}

void Sketch::fill(const Rect& r, char ch)
{
    for (int y = r.y1; y <= r.y2; ++y)
        for (int x = r.x1; x <= r.x2; ++x) set({x, y}, ch);
}

void Sketch::room(const Rect& interior, char floor)
{
    const Rect w = interior.expanded(1);
    for (int x = w.x1; x <= w.x2; ++x) {
        set({x, w.y1}, '-');
        set({x, w.y2}, '-');
    }
    for (int y = w.y1 + 1; y < w.y2; ++y) {
        set({w.x1, y}, '|');
        set({w.x2, y}, '|');
    }
    fill(interior, floor);
}

void Sketch::wallify()
{
    std::vector<std::string> out = rows_;
    for (int y = 0; y < height_; ++y)
        for (int x = 0; x < width_; ++x) {
            if (at({x, y}) != ' ') continue;
            bool touches = false;
            for (Dir d : kAllDirs) touches = touches || floor_like(at(Coord{x, y} + delta(d)));
            if (!touches) continue;
            const bool side = floor_like(at({x - 1, y})) || floor_like(at({x + 1, y}));
            out[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] = side ? '|' : '-';
        }
    rows_ = std::move(out);
}

Coord Sketch::trim()
{
    int x1 = width_, y1 = height_, x2 = -1, y2 = -1;
    for (int y = 0; y < height_; ++y)
        for (int x = 0; x < width_; ++x)
            if (at({x, y}) != ' ') {
                x1 = std::min(x1, x);
                y1 = std::min(y1, y);
                x2 = std::max(x2, x);
                y2 = std::max(y2, y);
            }
    if (x2 < 0) return {0, 0};
    std::vector<std::string> out;
    for (int y = y1; y <= y2; ++y)
        out.push_back(rows_[static_cast<std::size_t>(y)].substr(static_cast<std::size_t>(x1), static_cast<std::size_t>(x2 - x1 + 1)));
    rows_ = std::move(out);
    width_ = x2 - x1 + 1;
    height_ = y2 - y1 + 1;
    return {x1, y1};
}

std::vector<Coord> Sketch::cells(const Rect& r, char ch) const
{
    std::vector<Coord> out;
    for (int y = r.y1; y <= r.y2; ++y)
        for (int x = r.x1; x <= r.x2; ++x)
            if (at({x, y}) == ch) out.push_back({x, y});
    return out;
}

std::string Sketch::map() const
{
    std::string out;
    for (const auto& r : rows_) out += r + "\n";
    return out;
}

std::string coord(Coord c) { return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")"; }

std::string rect(const Rect& r)
{
    return "(" + std::to_string(r.x1) + "," + std::to_string(r.y1) + "," + std::to_string(r.x2) + "," + std::to_string(r.y2) + ")";
}

std::string maze_des(const Sketch& sketch, bool lit, const std::vector<std::string>& directives)
{
    std::string out = "MAZE: \"hackbox\", ' '\nGEOMETRY:center,center\nMAP\n" + sketch.map() + "ENDMAP\n";
    out += "REGION:" + rect({0, 0, sketch.width() - 1, sketch.height() - 1}) + "," + (lit ? "lit" : "unlit") + ",\"ordinary\"\n";
    for (const auto& d : directives) out += d + "\n";
    return out;
}

EnvSpec navigation_spec(std::string id, std::function<std::string(std::uint64_t)> des, int max_steps)
{
    EnvSpec s;
    s.id = std::move(id);
    s.des_source = std::move(des);
    s.reward = stair_reward();
    s.actions = sim::navigation_actions();
    s.obs_keys = {"chars", "colors", "ids", "chars_crop", "colors_crop", "ids_crop", "stats", "message"};
    s.max_steps = max_steps;
    s.engine.prompted = false;
    return s;
}

EnvSpec skill_spec(std::string id, std::function<std::string(std::uint64_t)> des, int max_steps)
{
    EnvSpec s;
    s.id = std::move(id);
    s.des_source = std::move(des);
    s.reward = stair_reward();
    s.actions = sim::skill_actions();
    s.obs_keys = {"chars",    "colors", "ids",     "chars_crop",  "colors_crop",
                  "ids_crop", "stats",  "message", "inv_letters", "inv_strs"};
    s.max_steps = max_steps;
    s.engine.prompted = true;
    return s;
}

reward::RewardConfig stair_reward() { return {reward::DefaultReward{}, {}}; }

}  // namespace hackbox::tasks::detail
