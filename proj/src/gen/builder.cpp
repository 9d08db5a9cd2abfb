#include "hackbox/gen/builder.hpp"

#include <algorithm>
#include <sstream>

#include "hackbox/dsl/parser.hpp"

namespace hackbox::gen {

namespace {

std::string quoted(std::string_view s)
{
    if (s.find_first_of("\"\n\r") != std::string_view::npos)
        throw std::invalid_argument("name may not contain quotes or newlines: " + std::string(s));
    return "\"" + std::string(s) + "\"";
}

std::string char_lit(char c)
{
    if (c == '\'' || c == '\n' || c == '\r') throw std::invalid_argument("unusable character literal");
    return std::string("'") + c + "'";
}

std::string coord_text(Coord c) { return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")"; }

bool is_identifier(std::string_view s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

}  // namespace

OutOfBounds::OutOfBounds(Coord c) : std::out_of_range("coordinate " + to_string(c) + " outside the level"), coord_(c) {}

LevelBuilder LevelBuilder::empty(int width, int height, bool lit)
{
    if (width < 1 || height < 1 || width > kMapWidth || height > kMapHeight)
        throw std::invalid_argument("level size must be within 1x1 and " + std::to_string(kMapWidth) + "x" +
                                    std::to_string(kMapHeight));
    LevelBuilder b;
    b.width_ = width;
    b.height_ = height;
    b.rows_.assign(static_cast<std::size_t>(height), std::string(static_cast<std::size_t>(width), '.'));
    b.lit_ = lit;
    return b;
}

LevelBuilder LevelBuilder::from_map(std::string_view map, bool lit, char fill)
{
    std::vector<std::string> rows;
    std::istringstream in{std::string(map)};
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        rows.push_back(line);
    }
    auto blank = [](const std::string& r) { return r.find_first_not_of(" \t") == std::string::npos; };
    while (!rows.empty() && blank(rows.front())) rows.erase(rows.begin());
    while (!rows.empty() && blank(rows.back())) rows.pop_back();
    if (rows.empty()) throw std::invalid_argument("empty map");
    std::size_t w = 0;
    for (const auto& r : rows) w = std::max(w, r.size());
    if (w > static_cast<std::size_t>(kMapWidth) || rows.size() > static_cast<std::size_t>(kMapHeight))
        throw std::invalid_argument("map larger than the canvas");
    LevelBuilder b;
    b.width_ = static_cast<int>(w);
    b.height_ = static_cast<int>(rows.size());
    for (auto& r : rows) r.resize(w, fill);
    b.rows_ = std::move(rows);
    b.fill_ = fill;
    b.lit_ = lit;
    return b;
}

void LevelBuilder::check(Coord c) const
{
    if (c.x < 0 || c.y < 0 || c.x >= width_ || c.y >= height_) throw OutOfBounds(c);
}

std::string LevelBuilder::place_text(const std::optional<Coord>& c) const
{
    if (!c) return "random";
    check(*c);
    return coord_text(*c);
}

LevelBuilder& LevelBuilder::add_object(std::string_view name, std::optional<char> cls, std::optional<Coord> place)
{
    std::string spec;
    if (name.empty() || name == "random") spec = cls ? char_lit(*cls) : "random";
    else spec = cls ? "(" + char_lit(*cls) + "," + quoted(name) + ")" : quoted(name);
    directives_.push_back("OBJECT:" + spec + "," + place_text(place));
    return *this;
}

LevelBuilder& LevelBuilder::add_monster(std::string_view name, std::optional<Coord> place,
                                        const std::vector<std::string>& args)
{
    std::string line = "MONSTER:" + (name.empty() || name == "random" ? std::string("random") : quoted(name)) + "," +
                       place_text(place);
    for (const auto& a : args) {
        if (!is_identifier(a)) throw std::invalid_argument("bad monster argument: " + a);
        line += "," + a;
    }
    directives_.push_back(std::move(line));
    return *this;
}

LevelBuilder& LevelBuilder::add_trap(std::string_view name, std::optional<Coord> place)
{
    directives_.push_back("TRAP:" + (name == "random" ? std::string("random") : quoted(name)) + "," + place_text(place));
    return *this;
}

LevelBuilder& LevelBuilder::add_sink(std::optional<Coord> place)
{
    directives_.push_back("SINK:" + place_text(place));
    return *this;
}

LevelBuilder& LevelBuilder::add_fountain(std::optional<Coord> place)
{
    directives_.push_back("FOUNTAIN:" + place_text(place));
    return *this;
}

LevelBuilder& LevelBuilder::add_altar(std::optional<Coord> place)
{
    directives_.push_back("ALTAR:" + place_text(place) + ",neutral,altar");
    return *this;
}

LevelBuilder& LevelBuilder::add_door(std::string_view state, std::optional<Coord> place)
{
    if (!is_identifier(state)) throw std::invalid_argument("bad door state: " + std::string(state));
    directives_.push_back("DOOR:" + std::string(state) + "," + place_text(place));
    return *this;
}

LevelBuilder& LevelBuilder::fill_terrain(std::string_view shape, char terrain, int x1, int y1, int x2, int y2)
{
    check({x1, y1});
    check({x2, y2});
    std::string target;
    if (shape == "rect" || shape == "fillrect")
        target = std::string(shape) + " (" + std::to_string(std::min(x1, x2)) + "," + std::to_string(std::min(y1, y2)) +
                 "," + std::to_string(std::max(x1, x2)) + "," + std::to_string(std::max(y1, y2)) + ")";
    else if (shape == "line")
        target = "line " + coord_text({x1, y1}) + "," + coord_text({x2, y2});
    else
        throw std::invalid_argument("unknown shape: " + std::string(shape));
    directives_.push_back("TERRAIN:" + target + "," + char_lit(terrain));
    return *this;
}

LevelBuilder& LevelBuilder::set_start_pos(Coord c)
{
    check(c);
    directives_.push_back("BRANCH:(" + std::to_string(c.x) + "," + std::to_string(c.y) + "," + std::to_string(c.x) + "," +
                          std::to_string(c.y) + "),(0,0,0,0)");
    return *this;
}

LevelBuilder& LevelBuilder::add_goal_pos(std::optional<Coord> c)
{
    directives_.push_back("STAIR:" + place_text(c) + ",down");
    return *this;
}

LevelBuilder& LevelBuilder::add_line(std::string_view line)
{
    if (line.find('\n') != std::string_view::npos) throw std::invalid_argument("add_line takes a single line");
    directives_.emplace_back(line);
    return *this;
}

std::string LevelBuilder::get_des() const
{
    std::string out = "MAZE:\"hackbox\"," + char_lit(fill_) + "\nGEOMETRY:center,center\nMAP\n";
    for (const auto& r : rows_) out += r + "\n";
    out += "ENDMAP\n";
    out += "REGION:(0,0," + std::to_string(width_ - 1) + "," + std::to_string(height_ - 1) + ")," +
           (lit_ ? "lit" : "unlit") + ",\"ordinary\"\n";
    for (const auto& d : directives_) out += d + "\n";
    try {
        (void)dsl::parse_document(out);
    } catch (const dsl::DslError& e) {
        throw std::logic_error(std::string("builder emitted unparsable des: ") + e.what());
    }
    return out;
}

}  // namespace hackbox::gen
