#include <stdexcept>

#include "common.hpp"

namespace hackbox::tasks {

namespace {

constexpr int kPlacementTries = 32;
constexpr std::uint64_t kSalt = 0x3C6EF372FE94F82BULL;

struct Chain {
    std::vector<Rect> rooms;
    std::vector<Coord> doors;
};

/// Room i+1 hangs off a wall of room i through a single door.
std::optional<Chain> try_chain(int n_rooms, int room_size, int canvas, Rng& rng)
{
    auto side = [&] { return rng.range(2, room_size - 2); };
    Chain c;
    const int w0 = side();
    const int h0 = side();
    c.rooms.push_back({canvas / 2, canvas / 2, canvas / 2 + w0 - 1, canvas / 2 + h0 - 1});
    while (static_cast<int>(c.rooms.size()) < n_rooms) {
        const Rect cur = c.rooms.back();
        bool placed = false;
        for (int t = 0; t < kPlacementTries && !placed; ++t) {
            const Dir d = kCardinalDirs[rng.index(4)];
            const int w = side();
            const int h = side();
            Rect next;
            Coord door;
            if (d == Dir::E || d == Dir::W) {
                door.y = rng.range(cur.y1, cur.y2);
                door.x = d == Dir::E ? cur.x2 + 1 : cur.x1 - 1;
                const int x1 = d == Dir::E ? door.x + 1 : door.x - w;
                const int y1 = rng.range(door.y - h + 1, door.y);
                next = {x1, y1, x1 + w - 1, y1 + h - 1};
            } else {
                door.x = rng.range(cur.x1, cur.x2);
                door.y = d == Dir::S ? cur.y2 + 1 : cur.y1 - 1;
                const int y1 = d == Dir::S ? door.y + 1 : door.y - h;
                const int x1 = rng.range(door.x - w + 1, door.x);
                next = {x1, y1, x1 + w - 1, y1 + h - 1};
            }
            if (next.x1 < 1 || next.y1 < 1 || next.x2 > canvas - 2 || next.y2 > canvas - 2) continue;
            bool clear = true;
            for (const Rect& r : c.rooms) clear = clear && !next.intersects(r.expanded(1));
            for (Coord p : c.doors) clear = clear && !next.expanded(1).contains(p);
            if (!clear) continue;
            c.rooms.push_back(next);
            c.doors.push_back(door);
            placed = true;
        }
        if (!placed) return std::nullopt;
    }
    return c;
}

}  // namespace

std::string gen_multiroom(int n_rooms, int room_size, MultiRoomVariant variant, std::uint64_t seed)
{
    if (n_rooms < 1) throw std::invalid_argument("multiroom needs at least one room");
    if (room_size < 4) throw std::invalid_argument("multiroom room size must be at least 4");
    Rng rng(seed ^ kSalt);
    const int canvas = 2 * n_rooms * (room_size + 1) + 2;
    std::optional<Chain> chain;
    while (!chain) chain = try_chain(n_rooms, room_size, canvas, rng);

    detail::Sketch sk(canvas, canvas);
    for (const Rect& r : chain->rooms) sk.room(r);
    if (variant.lava)
        for (int y = 0; y < canvas; ++y)
            for (int x = 0; x < canvas; ++x)
                if (sk.at({x, y}) == '-' || sk.at({x, y}) == '|') sk.set({x, y}, 'L');
    for (Coord d : chain->doors) sk.set(d, '+');
    const Coord off = sk.trim();

    std::vector<std::string> out;
    if (variant.locked)
        for (Coord d : chain->doors) out.push_back("DOOR:locked," + detail::coord(d - off));
    const Rect first = chain->rooms.front().translated({-off.x, -off.y});
    const Rect last = chain->rooms.back().translated({-off.x, -off.y});
    auto cell = [&](const Rect& r) { return Coord{rng.range(r.x1, r.x2), rng.range(r.y1, r.y2)}; };
    const Coord stair = cell(last);
    out.push_back("STAIR:" + detail::coord(stair) + ",down");
    if (variant.monster)
        for (const Rect& r : chain->rooms) {
            const Rect room = r.translated({-off.x, -off.y});
            Coord m = cell(room);
            while (m == stair) m = cell(room);
            out.push_back("MONSTER:random," + detail::coord(m));
        }
    out.push_back("BRANCH:" + detail::rect(first) + ",(0,0,0,0)");
    return detail::maze_des(sk, true, out);
}

}  // namespace hackbox::tasks
