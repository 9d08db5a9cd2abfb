#include "hackbox/gen/procgen.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace hackbox::gen {

namespace {

int sign(int v) { return (v > 0) - (v < 0); }

Coord clamp_to(Coord c, const Rect& r) { return {std::clamp(c.x, r.x1, r.x2), std::clamp(c.y, r.y1, r.y2)}; }

void randline_rec(Coord a, Coord b, int roughness, int depth, Rng& rng, const Rect& bounds, Selection& out)
{
    const int len = chebyshev(a, b);
    if (len <= 1 || depth >= 24) {
        const auto seg = select_line(a, b);
        out.insert(out.end(), seg.begin(), seg.end());
        return;
    }
    Coord mid{(a.x + b.x) / 2, (a.y + b.y) / 2};
    const int r = std::min(roughness, len / 3);
    if (r > 0) {
        const int j = rng.range(-r, r);
        mid = mid + Coord{-sign(b.y - a.y) * j, sign(b.x - a.x) * j};
        mid = clamp_to(mid, bounds);
    }
    if (mid == a || mid == b) {
        const auto seg = select_line(a, b);
        out.insert(out.end(), seg.begin(), seg.end());
        return;
    }
    randline_rec(a, mid, roughness, depth + 1, rng, bounds, out);
    randline_rec(mid, b, roughness, depth + 1, rng, bounds, out);
}

bool reach_passable(TerrainKind k) { return (agent_enterable(k) && k != TerrainKind::Lava) || k == TerrainKind::LockedDoor; }

bool diggable(TerrainKind k) { return k == TerrainKind::Solid || k == TerrainKind::Corridor; }

enum class Side { North, South, East, West };

Coord outward(Side s)
{
    switch (s) {
    case Side::North: return {0, -1};
    case Side::South: return {0, 1};
    case Side::East: return {1, 0};
    case Side::West: return {-1, 0};
    }
    return {};
}

Coord door_on(const Rect& interior, Side s, Rng& rng)
{
    const Rect w = interior.expanded(1);
    switch (s) {
    case Side::North: return {rng.range(interior.x1, interior.x2), w.y1};
    case Side::South: return {rng.range(interior.x1, interior.x2), w.y2};
    case Side::East: return {w.x2, rng.range(interior.y1, interior.y2)};
    case Side::West: return {w.x1, rng.range(interior.y1, interior.y2)};
    }
    return {};
}

std::optional<std::vector<Coord>> dig_path(const TerrainGrid& grid, Coord from, Coord to)
{
    Grid<int> prev(grid.width(), grid.height(), -1);
    std::deque<Coord> queue{from};
    prev[from] = from.y * grid.width() + from.x;
    while (!queue.empty()) {
        const Coord c = queue.front();
        queue.pop_front();
        if (c == to) break;
        for (Dir d : kCardinalDirs) {
            const Coord n = c + delta(d);
            if (!grid.contains(n) || prev[n] >= 0 || !diggable(grid[n])) continue;
            prev[n] = c.y * grid.width() + c.x;
            queue.push_back(n);
        }
    }
    if (prev[to] < 0) return std::nullopt;
    std::vector<Coord> path;
    for (Coord c = to;;) {
        path.push_back(c);
        if (c == from) break;
        const int p = prev[c];
        c = {p % grid.width(), p / grid.width()};
    }
    return path;
}

void join(TerrainGrid& grid, const Rect& a, const Rect& b, Rng& rng)
{
    const Rect wa = a.expanded(1);
    const Rect wb = b.expanded(1);
    Side sa = Side::North;
    Side sb = Side::South;
    if (wb.x1 > wa.x2) {
        sa = Side::East;
        sb = Side::West;
    } else if (wb.x2 < wa.x1) {
        sa = Side::West;
        sb = Side::East;
    } else if (wb.y1 > wa.y2) {
        sa = Side::South;
        sb = Side::North;
    }
    for (int attempt = 0; attempt < 50; ++attempt) {
        const Coord da = door_on(a, sa, rng);
        const Coord db = door_on(b, sb, rng);
        const Coord oa = da + outward(sa);
        const Coord ob = db + outward(sb);
        if (!grid.contains(oa) || !grid.contains(ob) || !diggable(grid[oa]) || !diggable(grid[ob])) continue;
        const auto path = dig_path(grid, oa, ob);
        if (!path) continue;
        for (Coord c : *path) grid[c] = TerrainKind::Corridor;
        for (Coord d : {da, db})
            if (is_wall_like(grid[d])) grid[d] = rng.percent(50) ? TerrainKind::Floor : TerrainKind::OpenDoor;
        return;
    }
    throw ConnectFailure("no corridor between rooms");
}

}  // namespace

void normalize(Selection& sel)
{
    std::sort(sel.begin(), sel.end(), [](Coord a, Coord b) { return a.y != b.y ? a.y < b.y : a.x < b.x; });
    sel.erase(std::unique(sel.begin(), sel.end()), sel.end());
}

Selection select_line(Coord a, Coord b)
{
    Selection out;
    const int dx = std::abs(b.x - a.x);
    const int dy = -std::abs(b.y - a.y);
    const int sx = a.x < b.x ? 1 : -1;
    const int sy = a.y < b.y ? 1 : -1;
    int err = dx + dy;
    Coord c = a;
    while (true) {
        out.push_back(c);
        if (c == b) break;
        const int e2 = 2 * err;
        if (e2 >= dy) {
            err += dy;
            c.x += sx;
        }
        if (e2 <= dx) {
            err += dx;
            c.y += sy;
        }
    }
    normalize(out);
    return out;
}

Selection select_fillrect(const Rect& r, const Rect& bounds)
{
    Selection out;
    const Rect c = r.clipped(bounds);
    for (int y = c.y1; y <= c.y2; ++y)
        for (int x = c.x1; x <= c.x2; ++x) out.push_back({x, y});
    return out;
}

Selection select_rect(const Rect& r, const Rect& bounds)
{
    Selection out;
    for (int x = r.x1; x <= r.x2; ++x) {
        out.push_back({x, r.y1});
        out.push_back({x, r.y2});
    }
    for (int y = r.y1; y <= r.y2; ++y) {
        out.push_back({r.x1, y});
        out.push_back({r.x2, y});
    }
    std::erase_if(out, [&](Coord c) { return !bounds.contains(c); });
    normalize(out);
    return out;
}

Selection select_randline(Coord a, Coord b, int roughness, Rng& rng, const Rect& bounds)
{
    Selection out;
    randline_rec(clamp_to(a, bounds), clamp_to(b, bounds), std::max(0, roughness), 0, rng, bounds, out);
    normalize(out);
    return out;
}

Selection select_filter(const Selection& sel, int percent, Rng& rng)
{
    Selection out;
    for (Coord c : sel)
        if (rng.percent(percent)) out.push_back(c);
    return out;
}

void replace_terrain(TerrainGrid& grid, const Rect& rect, TerrainKind from, TerrainKind to, int percent, Rng& rng)
{
    const Rect r = rect.clipped({0, 0, grid.width() - 1, grid.height() - 1});
    for (int y = r.y1; y <= r.y2; ++y)
        for (int x = r.x1; x <= r.x2; ++x)
            if (grid.at(x, y) == from && rng.percent(percent)) grid.at(x, y) = to;
}

Selection mazewalk(TerrainGrid& grid, const Rect& region, Coord entry, Dir first_step, Rng& rng)
{
    if (region.width() < 3 || region.height() < 3) throw RegionTooSmall("maze region smaller than 3x3");
    if (!region.contains(entry)) throw std::invalid_argument("maze entry outside its region");
    auto is_node = [&](Coord c) {
        const int lx = c.x - region.x1;
        const int ly = c.y - region.y1;
        return lx >= 1 && ly >= 1 && c.x < region.x2 && c.y < region.y2 && lx % 2 == 1 && ly % 2 == 1;
    };
    Selection carved;
    auto carve = [&](Coord c) {
        grid[c] = TerrainKind::Floor;
        carved.push_back(c);
    };
    Coord start = entry;
    if (!is_node(entry)) {
        start = entry + delta(first_step);
        if (!is_node(start)) {
            const auto it = std::find_if(kCardinalDirs.begin(), kCardinalDirs.end(),
                                         [&](Dir d) { return is_node(entry + delta(d)); });
            if (it == kCardinalDirs.end()) throw std::invalid_argument("maze entry not next to the maze lattice");
            start = entry + delta(*it);
        }
        carve(entry);
    }
    carve(start);
    std::vector<Coord> stack{start};
    while (!stack.empty()) {
        const Coord c = stack.back();
        std::array<Dir, 4> dirs = kCardinalDirs;
        rng.shuffle(std::span<Dir>(dirs));
        bool advanced = false;
        for (Dir d : dirs) {
            const Coord step = delta(d);
            const Coord next{c.x + 2 * step.x, c.y + 2 * step.y};
            if (!is_node(next) || grid[next] != TerrainKind::Solid) continue;
            carve(c + step);
            carve(next);
            stack.push_back(next);
            advanced = true;
            break;
        }
        if (!advanced) stack.pop_back();
    }
    for (int y = region.y1; y <= region.y2; ++y) {
        for (int x = region.x1; x <= region.x2; ++x) {
            if (grid.at(x, y) != TerrainKind::Solid) continue;
            bool touches = false;
            for (Dir d : kAllDirs) {
                const Coord n = Coord{x, y} + delta(d);
                if (grid.contains(n) && grid[n] == TerrainKind::Floor) touches = true;
            }
            if (!touches) continue;
            const bool side_floor = (x > 0 && grid.at(x - 1, y) == TerrainKind::Floor) ||
                                    (x + 1 < grid.width() && grid.at(x + 1, y) == TerrainKind::Floor);
            grid.at(x, y) = side_floor ? TerrainKind::WallV : TerrainKind::WallH;
        }
    }
    normalize(carved);
    return carved;
}

Rect place_room(const RoomRequest& req, const std::vector<PlacedRoom>& existing, Rng& rng)
{
    const bool fixed = req.pos && req.size && req.align;
    for (int attempt = 0; attempt < kPlacementAttempts; ++attempt) {
        const int w = req.size ? req.size->x : rng.range(3, 9);
        const int h = req.size ? req.size->y : rng.range(3, 9);
        if (w < 1 || h < 1 || w > kMapWidth - 2 || h > kMapHeight - 2) throw PlacementFailure("room size does not fit");
        Rect r;
        if (req.pos) {
            const int sx = std::clamp(req.pos->x, 1, 5);
            const int sy = std::clamp(req.pos->y, 1, 5);
            const Rect sector{(sx - 1) * kMapWidth / 5, (sy - 1) * kMapHeight / 5, sx * kMapWidth / 5 - 1,
                              sy * kMapHeight / 5 - 1};
            static constexpr std::array<std::string_view, 3> kH{"left", "center", "right"};
            static constexpr std::array<std::string_view, 3> kV{"top", "center", "bottom"};
            const std::string_view ha = req.align ? std::string_view(req.align->first) : kH[rng.index(3)];
            const std::string_view va = req.align ? std::string_view(req.align->second) : kV[rng.index(3)];
            int x1 = (sector.x1 + sector.x2 + 1) / 2 - w / 2;
            if (ha == "left") x1 = sector.x1 + 1;
            else if (ha == "right") x1 = sector.x2 - w;
            int y1 = (sector.y1 + sector.y2 + 1) / 2 - h / 2;
            if (va == "top") y1 = sector.y1 + 1;
            else if (va == "bottom") y1 = sector.y2 - h;
            x1 = std::clamp(x1, 1, kMapWidth - 1 - w);
            y1 = std::clamp(y1, 1, kMapHeight - 1 - h);
            r = {x1, y1, x1 + w - 1, y1 + h - 1};
        } else {
            const int x1 = rng.range(1, kMapWidth - 1 - w);
            const int y1 = rng.range(1, kMapHeight - 1 - h);
            r = {x1, y1, x1 + w - 1, y1 + h - 1};
        }
        const Rect guard = r.expanded(2);
        const bool clear = std::none_of(existing.begin(), existing.end(), [&](const PlacedRoom& o) {
            return !o.parent && guard.intersects(o.walls());
        });
        if (clear) return r;
        if (fixed) break;
    }
    throw PlacementFailure("no room position without overlap");
}

void carve_room(TerrainGrid& grid, const Rect& interior)
{
    const Rect w = interior.expanded(1);
    for (int y = w.y1; y <= w.y2; ++y) {
        for (int x = w.x1; x <= w.x2; ++x) {
            if (interior.contains({x, y})) grid.at(x, y) = TerrainKind::Floor;
            else if (y == w.y1 || y == w.y2) grid.at(x, y) = TerrainKind::WallH;
            else grid.at(x, y) = TerrainKind::WallV;
        }
    }
}

void random_corridors(TerrainGrid& grid, const std::vector<PlacedRoom>& rooms, Rng& rng)
{
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < rooms.size(); ++i)
        if (!rooms[i].parent) order.push_back(i);
    if (order.size() <= 1) return;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return rooms[a].interior.x1 < rooms[b].interior.x1; });
    for (std::size_t i = 0; i + 1 < order.size(); ++i) join(grid, rooms[order[i]].interior, rooms[order[i + 1]].interior, rng);
    const Mask seen = flood_fill(grid, {rooms[order[0]].interior.x1, rooms[order[0]].interior.y1});
    for (std::size_t i : order)
        if (!seen[{rooms[i].interior.x1, rooms[i].interior.y1}]) throw ConnectFailure("rooms left disconnected");
}

Mask flood_fill(const TerrainGrid& grid, Coord from)
{
    Mask seen(grid.width(), grid.height(), 0);
    if (!grid.contains(from) || !reach_passable(grid[from])) return seen;
    std::deque<Coord> queue{from};
    seen[from] = 1;
    while (!queue.empty()) {
        const Coord c = queue.front();
        queue.pop_front();
        for (Dir d : kAllDirs) {
            const Coord n = c + delta(d);
            if (!grid.contains(n) || seen[n] || !reach_passable(grid[n])) continue;
            if (is_diagonal(d) && (is_doorway(grid[c]) || is_doorway(grid[n]))) continue;
            seen[n] = 1;
            queue.push_back(n);
        }
    }
    return seen;
}

}  // namespace hackbox::gen
