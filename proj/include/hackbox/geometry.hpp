#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hackbox {

inline constexpr int kMapWidth = 79;
inline constexpr int kMapHeight = 21;

struct Coord {
    int x = 0;
    int y = 0;

    friend constexpr bool operator==(Coord, Coord) = default;
    friend constexpr auto operator<=>(Coord, Coord) = default;
    constexpr Coord operator+(Coord o) const { return {x + o.x, y + o.y}; }
    constexpr Coord operator-(Coord o) const { return {x - o.x, y - o.y}; }
};

inline int chebyshev(Coord a, Coord b) { return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y)); }

inline std::string to_string(Coord c) { return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")"; }

/// Inclusive rectangle.
struct Rect {
    int x1 = 0;
    int y1 = 0;
    int x2 = 0;
    int y2 = 0;

    friend constexpr bool operator==(const Rect&, const Rect&) = default;

    [[nodiscard]] constexpr int width() const { return x2 - x1 + 1; }
    [[nodiscard]] constexpr int height() const { return y2 - y1 + 1; }
    [[nodiscard]] constexpr bool contains(Coord c) const { return c.x >= x1 && c.x <= x2 && c.y >= y1 && c.y <= y2; }
    [[nodiscard]] constexpr bool intersects(const Rect& o) const
    {
        return x1 <= o.x2 && o.x1 <= x2 && y1 <= o.y2 && o.y1 <= y2;
    }
    [[nodiscard]] constexpr Rect expanded(int by) const { return {x1 - by, y1 - by, x2 + by, y2 + by}; }
    [[nodiscard]] constexpr Rect translated(Coord d) const { return {x1 + d.x, y1 + d.y, x2 + d.x, y2 + d.y}; }
    [[nodiscard]] Rect clipped(const Rect& bounds) const
    {
        return {std::max(x1, bounds.x1), std::max(y1, bounds.y1), std::min(x2, bounds.x2), std::min(y2, bounds.y2)};
    }
    [[nodiscard]] constexpr bool empty() const { return x2 < x1 || y2 < y1; }
};

inline constexpr Rect kCanvas{0, 0, kMapWidth - 1, kMapHeight - 1};

inline bool in_canvas(Coord c) { return kCanvas.contains(c); }

enum class Dir : std::uint8_t { N, NE, E, SE, S, SW, W, NW };

inline constexpr std::array<Dir, 8> kAllDirs{Dir::N, Dir::NE, Dir::E, Dir::SE, Dir::S, Dir::SW, Dir::W, Dir::NW};
inline constexpr std::array<Dir, 4> kCardinalDirs{Dir::N, Dir::E, Dir::S, Dir::W};

inline constexpr Coord delta(Dir d)
{
    constexpr std::array<Coord, 8> table{{{0, -1}, {1, -1}, {1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}}};
    return table[static_cast<std::size_t>(d)];
}

inline constexpr bool is_diagonal(Dir d) { return (static_cast<int>(d) & 1) != 0; }

inline std::string_view dir_name(Dir d)
{
    constexpr std::array<std::string_view, 8> names{"n", "ne", "e", "se", "s", "sw", "w", "nw"};
    return names[static_cast<std::size_t>(d)];
}

inline std::optional<Dir> dir_from_name(std::string_view s)
{
    for (Dir d : kAllDirs)
        if (dir_name(d) == s) return d;
    return std::nullopt;
}

/// Dense row-major grid.
template <typename T>
class Grid {
public:
    Grid() = default;
    Grid(int width, int height, T fill = T{})
        : width_(width), height_(height), cells_(static_cast<std::size_t>(width * height), fill)
    {
    }

    [[nodiscard]] int width() const { return width_; }
    [[nodiscard]] int height() const { return height_; }
    [[nodiscard]] bool contains(Coord c) const { return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_; }

    T& operator[](Coord c) { return cells_[static_cast<std::size_t>(c.y * width_ + c.x)]; }
    const T& operator[](Coord c) const { return cells_[static_cast<std::size_t>(c.y * width_ + c.x)]; }
    T& at(int x, int y) { return cells_[static_cast<std::size_t>(y * width_ + x)]; }
    const T& at(int x, int y) const { return cells_[static_cast<std::size_t>(y * width_ + x)]; }

    void fill(const T& value) { std::fill(cells_.begin(), cells_.end(), value); }

    [[nodiscard]] const std::vector<T>& cells() const { return cells_; }
    std::vector<T>& cells() { return cells_; }

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<T> cells_;
};

}  // namespace hackbox
