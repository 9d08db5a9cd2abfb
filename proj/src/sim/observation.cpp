#include "hackbox/sim/observation.hpp"

#include <algorithm>

namespace hackbox::sim {

namespace {

constexpr std::uint8_t kAgentColor = 15;

std::uint8_t trap_color(std::string_view name) { return name == "fire" ? 1 : 5; }

std::string with_article(std::string_view name)
{
    const bool vowel = !name.empty() && std::string_view("aeiou").find(name.front()) != std::string_view::npos;
    return (vowel ? "an " : "a ") + std::string(name);
}

std::string trap_description(std::string_view name)
{
    return name == "teleport" ? "teleportation trap" : std::string(name) + " trap";
}

template <typename T>
Grid<T> crop_of(const WorldState& s, int n, T pad, T (*pick)(const Glyph&))
{
    Grid<T> out(n, n, pad);
    const int half = n / 2;
    for (int dy = 0; dy < n; ++dy)
        for (int dx = 0; dx < n; ++dx) {
            const Coord c{s.agent.pos.x - half + dx, s.agent.pos.y - half + dy};
            if (s.terrain.contains(c)) out.at(dx, dy) = pick(glyph_at(s, c));
        }
    return out;
}

std::uint8_t pick_char(const Glyph& g) { return g.ch; }
std::uint8_t pick_color(const Glyph& g) { return g.color; }
std::uint16_t pick_id(const Glyph& g) { return g.id; }

}  // namespace

std::uint16_t terrain_id(TerrainKind k) { return static_cast<std::uint16_t>(kTerrainIdBase + static_cast<int>(k)); }

std::uint16_t monster_id(const Catalog&, std::size_t kind)
{
    return static_cast<std::uint16_t>(kTerrainIdBase + kTerrainKindCount + kind);
}

std::uint16_t object_id(const Catalog& c, std::size_t kind)
{
    return static_cast<std::uint16_t>(kTerrainIdBase + kTerrainKindCount + c.monsters().size() + kind);
}

std::uint16_t trap_id(const Catalog& c, std::string_view name)
{
    const auto it = std::find(kTrapNames.begin(), kTrapNames.end(), name);
    const auto idx = static_cast<std::size_t>(it == kTrapNames.end() ? 0 : it - kTrapNames.begin());
    return static_cast<std::uint16_t>(kTerrainIdBase + kTerrainKindCount + c.monsters().size() + c.objects().size() + idx);
}

std::uint16_t max_id(const Catalog& c) { return trap_id(c, kTrapNames.back()); }

std::string ids_tsv(const Catalog& c)
{
    std::string out = "# hackbox-ids v1\n# id\tkind\tname\tchar\tcolor\n";
    auto row = [&](int id, std::string_view kind, std::string_view name, char ch, int color) {
        out += std::to_string(id) + "\t" + std::string(kind) + "\t" + std::string(name) + "\t" + std::string(1, ch) + "\t" +
               std::to_string(color) + "\n";
    };
    row(0, "unseen", "unseen", ' ', 0);
    row(kAgentId, "agent", "agent", '@', kAgentColor);
    for (int k = 0; k < kTerrainKindCount; ++k) {
        const auto t = static_cast<TerrainKind>(k);
        row(terrain_id(t), "terrain", terrain_name(t), display_char(t), display_color(t));
    }
    for (std::size_t i = 0; i < c.monsters().size(); ++i) {
        const auto& m = c.monsters()[i];
        row(monster_id(c, i), "monster", m.name, m.cls, m.color);
    }
    for (std::size_t i = 0; i < c.objects().size(); ++i) {
        const auto& o = c.objects()[i];
        row(object_id(c, i), "object", o.name, o.cls, o.color);
    }
    for (auto t : kTrapNames) row(trap_id(c, t), "trap", t, '^', trap_color(t));
    return out;
}

Glyph glyph_at(const WorldState& s, Coord c)
{
    if (!s.terrain.contains(c) || !s.remembered[c]) return {};
    const Catalog& cat = *s.catalog;
    if (s.visible[c]) {
        if (c == s.agent.pos) return {'@', kAgentColor, kAgentId};
        if (const auto* m = s.monster_at(c)) {
            const auto& k = cat.monsters()[m->kind];
            return {static_cast<std::uint8_t>(k.cls), k.color, monster_id(cat, m->kind)};
        }
        if (s.boulder_at(c)) {
            const auto idx = *cat.find_object("boulder");
            return {static_cast<std::uint8_t>(cat.objects()[idx].cls), cat.objects()[idx].color, object_id(cat, idx)};
        }
        for (auto it = s.objects.rbegin(); it != s.objects.rend(); ++it)
            if (it->pos == c) {
                const auto& k = cat.objects()[it->obj.kind];
                return {static_cast<std::uint8_t>(k.cls), k.color, object_id(cat, it->obj.kind)};
            }
        if (const auto* t = s.trap_at(c); t && !t->hidden) return {'^', trap_color(t->name), trap_id(cat, t->name)};
    }
    const TerrainKind t = s.terrain[c];
    if (t == TerrainKind::Solid) return {};
    return {static_cast<std::uint8_t>(display_char(t)), display_color(t), terrain_id(t)};
}

std::string describe_cell(const WorldState& s, int x, int y)
{
    const Coord c{x, y};
    if (!s.terrain.contains(c)) throw std::out_of_range("cell " + to_string(c) + " outside the map");
    if (c == s.agent.pos) return "agent";
    if (!s.remembered[c]) return "";
    if (s.visible[c]) {
        if (const auto* m = s.monster_at(c)) return m->name;
        if (s.boulder_at(c)) return "a boulder";
        for (auto it = s.objects.rbegin(); it != s.objects.rend(); ++it)
            if (it->pos == c) return with_article(s.kind_of(it->obj).name);
        if (const auto* t = s.trap_at(c); t && !t->hidden) return trap_description(t->name);
    }
    const TerrainKind t = s.terrain[c];
    return t == TerrainKind::Solid ? "" : std::string(terrain_description(t));
}

std::string inventory_string(const WorldState& s, const InventoryItem& it)
{
    const ObjectKind& k = s.kind_of(it.obj);
    std::string out = k.category == ObjectCategory::Coin ? std::to_string(it.obj.quantity) + " gold pieces"
                      : it.obj.quantity > 1              ? std::to_string(it.obj.quantity) + " " + k.name + "s"
                                                         : with_article(k.name);
    if (s.agent.wielded == it.letter) out += " (weapon in hand)";
    if (std::find(s.agent.worn.begin(), s.agent.worn.end(), it.letter) != s.agent.worn.end())
        out += " (being worn)";
    return out;
}

Observation observe(const WorldState& s, const std::set<std::string>& keys, int crop)
{
    for (const auto& k : keys)
        if (std::find(kObservationKeys.begin(), kObservationKeys.end(), k) == kObservationKeys.end()) throw UnknownKey(k);
    if (crop < 1 || crop % 2 == 0) throw std::invalid_argument("crop size must be odd and positive");
    Observation o;
    const int w = s.terrain.width();
    const int h = s.terrain.height();
    auto want = [&](std::string_view k) { return keys.count(std::string(k)) != 0; };

    if (want("chars") || want("colors") || want("ids")) {
        Grid<std::uint8_t> chars(w, h, ' '), colors(w, h, 0);
        Grid<std::uint16_t> ids(w, h, 0);
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                const Glyph g = glyph_at(s, {x, y});
                chars.at(x, y) = g.ch;
                colors.at(x, y) = g.color;
                ids.at(x, y) = g.id;
            }
        if (want("chars")) o.chars = std::move(chars);
        if (want("colors")) o.colors = std::move(colors);
        if (want("ids")) o.ids = std::move(ids);
    }
    if (want("chars_crop")) o.chars_crop = crop_of<std::uint8_t>(s, crop, ' ', pick_char);
    if (want("colors_crop")) o.colors_crop = crop_of<std::uint8_t>(s, crop, 0, pick_color);
    if (want("ids_crop")) o.ids_crop = crop_of<std::uint16_t>(s, crop, 0, pick_id);
    if (want("stats")) {
        std::array<std::int64_t, kStatsSize> st{};
        st[kStatX] = s.agent.pos.x;
        st[kStatY] = s.agent.pos.y;
        st[kStatHp] = s.agent.hp;
        st[kStatHpMax] = s.agent.hp_max;
        st[kStatClock] = s.clock;
        st[kStatLevitating] = s.agent.levitating ? 1 : 0;
        st[kStatInventory] = static_cast<std::int64_t>(s.agent.inventory.size());
        o.stats = st;
    }
    if (want("message")) {
        std::array<std::uint8_t, kMessageSize> m{};
        const std::size_t n = std::min<std::size_t>(s.message.size(), kMessageSize - 1);
        std::copy_n(s.message.begin(), n, m.begin());
        o.message = m;
    }
    if (want("screen_descriptions")) {
        Grid<std::string> d(w, h);
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) d.at(x, y) = describe_cell(s, x, y);
        o.screen_descriptions = std::move(d);
    }
    if (want("inv_letters") || want("inv_strs")) {
        std::array<std::uint8_t, kInventorySlots> letters{};
        std::vector<std::string> strs(kInventorySlots);
        std::size_t i = 0;
        for (const auto& it : s.agent.inventory) {
            if (i == static_cast<std::size_t>(kInventorySlots)) break;
            letters[i] = static_cast<std::uint8_t>(it.letter);
            strs[i] = inventory_string(s, it);
            ++i;
        }
        if (want("inv_letters")) o.inv_letters = letters;
        if (want("inv_strs")) o.inv_strs = std::move(strs);
    }
    return o;
}

std::string render_ansi(const WorldState& s)
{
    std::string out = s.message + "\n";
    for (int y = 0; y < s.terrain.height(); ++y) {
        int current = -1;
        for (int x = 0; x < s.terrain.width(); ++x) {
            const Glyph g = glyph_at(s, {x, y});
            if (g.color != current) {
                current = g.color;
                out += g.color < 8 ? "\x1b[0;3" + std::to_string(g.color) + "m" : "\x1b[1;3" + std::to_string(g.color - 8) + "m";
            }
            out += static_cast<char>(g.ch);
        }
        out += "\x1b[0m\n";
    }
    out += "HP:" + std::to_string(s.agent.hp) + "(" + std::to_string(s.agent.hp_max) + ") T:" + std::to_string(s.clock) +
           " Pos:" + to_string(s.agent.pos) + (s.agent.levitating ? " Lev" : "") + "\n";
    return out;
}

}  // namespace hackbox::sim
