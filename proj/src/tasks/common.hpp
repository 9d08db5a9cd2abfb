#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hackbox/geometry.hpp"
#include "hackbox/tasks.hpp"

namespace hackbox::tasks::detail {

/// Character canvas for drawing MAP blocks.
class Sketch {
public:
    Sketch(int width, int height, char fill = ' ');

    [[nodiscard]] int width() const { return width_; }
    [[nodiscard]] int height() const { return height_; }
    [[nodiscard]] char at(Coord c) const;
    void set(Coord c, char ch);
    void fill(const Rect& r, char ch);
    /// Floor interior with a wall ring around it.
    void room(const Rect& interior, char floor = '.');
    /// Turn blank cells that touch floor-like cells into walls.
    void wallify();
    /// Drop blank margins; returns the offset that was removed.
    Coord trim();

    [[nodiscard]] std::vector<Coord> cells(const Rect& r, char ch) const;
    [[nodiscard]] std::string map() const;

private:
    int width_;
    int height_;
    std::vector<std::string> rows_;
};

/// MAZE level around a map: header, MAP block, lighting region and directives.
std::string maze_des(const Sketch& sketch, bool lit, const std::vector<std::string>& directives);

std::string coord(Coord c);
std::string rect(const Rect& r);

using Factory = std::function<EnvSpec()>;

struct Entry {
    std::string id;
    Factory make;
};

/// Moves only, prompts off.
EnvSpec navigation_spec(std::string id, std::function<std::string(std::uint64_t)> des, int max_steps);
/// Full skill action set with prompts and message observations.
EnvSpec skill_spec(std::string id, std::function<std::string(std::uint64_t)> des, int max_steps);

reward::RewardConfig stair_reward();

void register_navigation(std::vector<Entry>& out);
void register_skills(std::vector<Entry>& out);
void register_ported(std::vector<Entry>& out);

}  // namespace hackbox::tasks::detail
