#include "hackbox/catalog.hpp"

#include <array>
#include <charconv>
#include <sstream>

#include "catalog_data.hpp"

namespace hackbox {

namespace {

constexpr std::array<std::string_view, 13> kCategoryNames{
    "comestible", "weapon", "armor", "boots", "ring", "amulet", "potion",
    "wand",       "scroll", "tool",  "key",   "rock", "coin",
};

std::vector<std::string> split(std::string_view line, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.emplace_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::optional<int> parse_int(std::string_view s)
{
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

/// Yields the data rows of a versioned TSV table (header checked, comments skipped).
template <typename RowFn>
void for_each_row(std::string_view text, std::string_view expected_header, RowFn&& fn)
{
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!header_seen) {
            if (line != expected_header)
                throw CatalogError("line " + std::to_string(lineno) + ": expected header '" +
                                   std::string(expected_header) + "'");
            header_seen = true;
            continue;
        }
        if (line.front() == '#') continue;
        fn(split(line, '\t'), lineno);
    }
    if (!header_seen) throw CatalogError("missing header '" + std::string(expected_header) + "'");
}

char single_char(const std::string& field, int lineno)
{
    if (field.size() != 1) throw CatalogError("line " + std::to_string(lineno) + ": class must be one character");
    return field.front();
}

Dice required_dice(const std::string& field, int lineno)
{
    auto d = parse_dice(field);
    if (!d) throw CatalogError("line " + std::to_string(lineno) + ": bad dice '" + field + "'");
    return *d;
}

std::uint8_t color_field(const std::string& field, int lineno)
{
    auto v = parse_int(field);
    if (!v || *v < 0 || *v > 15) throw CatalogError("line " + std::to_string(lineno) + ": bad color");
    return static_cast<std::uint8_t>(*v);
}

}  // namespace

std::string to_string(const Dice& d) { return std::to_string(d.count) + "d" + std::to_string(d.sides); }

std::string_view category_name(ObjectCategory c) { return kCategoryNames[static_cast<std::size_t>(c)]; }

std::optional<Dice> parse_dice(std::string_view text)
{
    const auto d = text.find('d');
    if (d == std::string_view::npos) return std::nullopt;
    auto n = parse_int(text.substr(0, d));
    auto m = parse_int(text.substr(d + 1));
    if (!n || !m || *n < 0 || *m < 1) return std::nullopt;
    return Dice{*n, *m};
}

Catalog Catalog::parse(std::string_view monsters_tsv, std::string_view objects_tsv)
{
    Catalog cat;
    for_each_row(monsters_tsv, "# hackbox-monsters v1", [&](const std::vector<std::string>& f, int lineno) {
        if (f.size() != 7) throw CatalogError("monsters line " + std::to_string(lineno) + ": expected 7 fields");
        MonsterKind m;
        m.name = f[0];
        m.cls = single_char(f[1], lineno);
        m.hit_dice = required_dice(f[2], lineno);
        m.damage = required_dice(f[3], lineno);
        auto speed = parse_int(f[4]);
        if (!speed) throw CatalogError("monsters line " + std::to_string(lineno) + ": bad speed");
        m.speed = *speed;
        m.color = color_field(f[5], lineno);
        m.hostile = true;
        for (const auto& flag : split(f[6], ',')) {
            if (flag == "hostile") m.hostile = true;
            else if (flag == "peaceful") m.hostile = false;
            else if (flag == "instakill") m.instakill = true;
            else if (flag == "ranged") m.ranged = true;
            else if (flag == "unique") m.unique = true;
            else if (flag != "-") throw CatalogError("monsters line " + std::to_string(lineno) + ": unknown flag " + flag);
        }
        if (cat.find_monster(m.name)) throw CatalogError("duplicate monster " + m.name);
        cat.monsters_.push_back(std::move(m));
    });
    for_each_row(objects_tsv, "# hackbox-objects v1", [&](const std::vector<std::string>& f, int lineno) {
        if (f.size() != 7) throw CatalogError("objects line " + std::to_string(lineno) + ": expected 7 fields");
        ObjectKind o;
        o.name = f[0];
        o.cls = single_char(f[1], lineno);
        bool found = false;
        for (std::size_t i = 0; i < kCategoryNames.size(); ++i) {
            if (kCategoryNames[i] == f[2]) {
                o.category = static_cast<ObjectCategory>(i);
                found = true;
            }
        }
        if (!found) throw CatalogError("objects line " + std::to_string(lineno) + ": unknown category " + f[2]);
        if (f[3] == "none") o.effect = ItemEffect::None;
        else if (f[3] == "levitation") o.effect = ItemEffect::Levitation;
        else if (f[3] == "death") o.effect = ItemEffect::Death;
        else if (f[3] == "cold") o.effect = ItemEffect::Cold;
        else if (f[3] == "heal") o.effect = ItemEffect::Heal;
        else if (f[3] == "unlock") o.effect = ItemEffect::Unlock;
        else throw CatalogError("objects line " + std::to_string(lineno) + ": unknown effect " + f[3]);
        o.color = color_field(f[4], lineno);
        if (f[5] != "-") o.damage = required_dice(f[5], lineno);
        if (f[6] == "norandom") o.random_ok = false;
        else if (f[6] != "-") throw CatalogError("objects line " + std::to_string(lineno) + ": unknown flag " + f[6]);
        if (cat.find_object(o.name)) throw CatalogError("duplicate object " + o.name);
        cat.objects_.push_back(std::move(o));
    });
    return cat;
}

const Catalog& Catalog::builtin()
{
    static const Catalog cat = parse(data::kMonstersTsv, data::kObjectsTsv);
    return cat;
}

std::optional<std::size_t> Catalog::find_monster(std::string_view name) const
{
    for (std::size_t i = 0; i < monsters_.size(); ++i)
        if (monsters_[i].name == name) return i;
    return std::nullopt;
}

std::optional<std::size_t> Catalog::find_object(std::string_view name, std::optional<char> cls) const
{
    for (std::size_t i = 0; i < objects_.size(); ++i)
        if (objects_[i].name == name && (!cls || objects_[i].cls == *cls)) return i;
    const std::string suffix = " of " + std::string(name);
    for (std::size_t i = 0; i < objects_.size(); ++i) {
        const auto& n = objects_[i].name;
        if (n.size() > suffix.size() && n.compare(n.size() - suffix.size(), suffix.size(), suffix) == 0 &&
            (!cls || objects_[i].cls == *cls))
            return i;
    }
    return std::nullopt;
}

std::vector<std::size_t> Catalog::monsters_of_class(char cls) const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < monsters_.size(); ++i)
        if (monsters_[i].cls == cls && !monsters_[i].unique) out.push_back(i);
    return out;
}

std::vector<std::size_t> Catalog::objects_of_class(char cls) const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < objects_.size(); ++i)
        if (objects_[i].cls == cls && objects_[i].random_ok) out.push_back(i);
    return out;
}

std::vector<std::size_t> Catalog::random_monsters() const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < monsters_.size(); ++i)
        if (!monsters_[i].unique) out.push_back(i);
    return out;
}

std::vector<std::size_t> Catalog::random_objects() const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < objects_.size(); ++i)
        if (objects_[i].random_ok) out.push_back(i);
    return out;
}

}  // namespace hackbox
