#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hackbox/geometry.hpp"

namespace hackbox::gen {

class OutOfBounds : public std::out_of_range {
public:
    explicit OutOfBounds(Coord c);
    [[nodiscard]] Coord coord() const { return coord_; }

private:
    Coord coord_;
};

/// Builds des source programmatically. Coordinates are map-local; an omitted
/// place means `random`.
class LevelBuilder {
public:
    /// Open w x h floor area.
    static LevelBuilder empty(int width, int height, bool lit = true);
    /// Fixed map given as text rows; leading and trailing blank lines are dropped.
    static LevelBuilder from_map(std::string_view map, bool lit = true, char fill = ' ');

    LevelBuilder& add_object(std::string_view name, std::optional<char> cls = std::nullopt,
                             std::optional<Coord> place = std::nullopt);
    LevelBuilder& add_monster(std::string_view name = "random", std::optional<Coord> place = std::nullopt,
                              const std::vector<std::string>& args = {});
    LevelBuilder& add_trap(std::string_view name = "teleport", std::optional<Coord> place = std::nullopt);
    LevelBuilder& add_sink(std::optional<Coord> place = std::nullopt);
    LevelBuilder& add_fountain(std::optional<Coord> place = std::nullopt);
    LevelBuilder& add_altar(std::optional<Coord> place = std::nullopt);
    LevelBuilder& add_door(std::string_view state, std::optional<Coord> place = std::nullopt);
    /// shape is "rect" (outline), "fillrect" or "line".
    LevelBuilder& fill_terrain(std::string_view shape, char terrain, int x1, int y1, int x2, int y2);
    LevelBuilder& set_start_pos(Coord c);
    /// Down staircase at c, or at a random cell.
    LevelBuilder& add_goal_pos(std::optional<Coord> c = std::nullopt);
    /// Append a raw des command line (checked when the source is emitted).
    LevelBuilder& add_line(std::string_view line);

    [[nodiscard]] int width() const { return width_; }
    [[nodiscard]] int height() const { return height_; }

    /// The des program. Throws std::logic_error if it would not parse.
    [[nodiscard]] std::string get_des() const;

private:
    LevelBuilder() = default;

    [[nodiscard]] std::string place_text(const std::optional<Coord>& c) const;
    void check(Coord c) const;

    int width_ = 0;
    int height_ = 0;
    std::vector<std::string> rows_;
    char fill_ = ' ';
    bool lit_ = true;
    std::vector<std::string> directives_;
};

}  // namespace hackbox::gen
