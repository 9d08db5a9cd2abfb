#include "hackbox/sim/fov.hpp"

namespace hackbox::sim {

namespace {

// Slopes are exact rationals num/den with den > 0.
struct Slope {
    long num;
    long den;
};

long floor_div(long a, long b)
{
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

long ceil_div(long a, long b) { return -floor_div(-a, b); }

// floor(depth * s + 1/2)
long round_ties_up(long depth, Slope s) { return floor_div(2 * depth * s.num + s.den, 2 * s.den); }

// ceil(depth * s - 1/2)
long round_ties_down(long depth, Slope s) { return ceil_div(2 * depth * s.num - s.den, 2 * s.den); }

class Caster {
public:
    Caster(const TerrainGrid& terrain, Coord origin, Mask& out) : terrain_(terrain), origin_(origin), out_(out) {}

    void run()
    {
        out_[origin_] = 1;
        for (quadrant_ = 0; quadrant_ < 4; ++quadrant_) scan(1, {-1, 1}, {1, 1});
    }

private:
    Coord transform(long depth, long col) const
    {
        const int r = static_cast<int>(depth);
        const int c = static_cast<int>(col);
        switch (quadrant_) {
        case 0: return {origin_.x + c, origin_.y - r};
        case 1: return {origin_.x + r, origin_.y + c};
        case 2: return {origin_.x + c, origin_.y + r};
        default: return {origin_.x - r, origin_.y + c};
        }
    }

    // Out-of-grid tiles block without being revealed.
    bool blocking(long depth, long col) const
    {
        const Coord c = transform(depth, col);
        return !terrain_.contains(c) || opaque(terrain_[c]);
    }

    void reveal(long depth, long col)
    {
        const Coord c = transform(depth, col);
        if (terrain_.contains(c)) out_[c] = 1;
    }

    static bool symmetric(long depth, long col, Slope start, Slope end)
    {
        return col * start.den >= depth * start.num && col * end.den <= depth * end.num;
    }

    void scan(long depth, Slope start, Slope end)
    {
        const long lo = round_ties_up(depth, start);
        const long hi = round_ties_down(depth, end);
        int prev = -1;  // -1 none, 0 floor, 1 wall
        for (long col = lo; col <= hi; ++col) {
            const bool wall = blocking(depth, col);
            if (wall || symmetric(depth, col, start, end)) reveal(depth, col);
            if (prev == 1 && !wall) start = {2 * col - 1, 2 * depth};
            if (prev == 0 && wall) scan(depth + 1, start, {2 * col - 1, 2 * depth});
            prev = wall ? 1 : 0;
        }
        if (prev == 0) scan(depth + 1, start, end);
    }

    const TerrainGrid& terrain_;
    Coord origin_;
    Mask& out_;
    int quadrant_ = 0;
};

}  // namespace

Mask line_of_sight(const TerrainGrid& terrain, Coord origin)
{
    Mask out(terrain.width(), terrain.height(), 0);
    if (!terrain.contains(origin)) return out;
    Caster(terrain, origin, out).run();
    return out;
}

Mask field_of_view(const TerrainGrid& terrain, const Mask& lit, Coord origin)
{
    Mask out = line_of_sight(terrain, origin);
    for (int y = 0; y < out.height(); ++y)
        for (int x = 0; x < out.width(); ++x) {
            auto& v = out.at(x, y);
            if (v && !lit.at(x, y) && chebyshev({x, y}, origin) > 1) v = 0;
        }
    return out;
}

}  // namespace hackbox::sim
