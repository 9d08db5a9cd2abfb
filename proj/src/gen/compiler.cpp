#include "hackbox/gen/compiler.hpp"

#include <algorithm>
#include <array>

#include "hackbox/dsl/errors.hpp"

namespace hackbox::gen {

CompileError::CompileError(dsl::SourceSpan span, std::string reason)
    : std::runtime_error(dsl::format_location(span) + ": " + reason), span_(span), reason_(std::move(reason))
{
}

int roll_dice(int n, int m, Rng& rng) { return rng.dice(n, m); }

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

using dsl::SourceSpan;

const Value& lookup(const EvalContext& ctx, const std::string& name, const SourceSpan& span)
{
    const auto it = ctx.variables.find(name);
    if (it == ctx.variables.end()) throw UnboundVariable(span, name);
    return it->second;
}

std::size_t array_size(const Value::Data& d)
{
    return std::visit(overloaded{[](const std::vector<char>& v) { return v.size(); },
                                 [](const std::vector<std::string>& v) { return v.size(); },
                                 [](const std::vector<Coord>& v) { return v.size(); },
                                 [](const auto&) { return std::size_t{0}; }},
                      d);
}

bool is_array(const Value::Data& d)
{
    return std::holds_alternative<std::vector<char>>(d) || std::holds_alternative<std::vector<std::string>>(d) ||
           std::holds_alternative<std::vector<Coord>>(d);
}

/// Reads `$name` or `$name[i]`; array elements come back as scalars.
Value read_var(const dsl::VarAccess& v, EvalContext& ctx, const SourceSpan& span)
{
    const Value& val = lookup(ctx, v.name, span);
    if (!v.index) return val;
    if (!is_array(val.data)) throw CompileError(span, "$" + v.name + " is not an array");
    const int i = eval_int(**v.index, ctx);
    if (i < 0 || static_cast<std::size_t>(i) >= array_size(val.data))
        throw CompileError(span, "index " + std::to_string(i) + " out of range for $" + v.name);
    const auto k = static_cast<std::size_t>(i);
    return std::visit(overloaded{[&](const std::vector<char>& a) { return Value{a[k], val.tag}; },
                                 [&](const std::vector<std::string>& a) { return Value{a[k], val.tag}; },
                                 [&](const std::vector<Coord>& a) { return Value{a[k], val.tag}; },
                                 [&](const auto&) { return val; }},
                      val.data);
}

}  // namespace

int eval_int(const dsl::IntExpr& expr, EvalContext& ctx)
{
    return std::visit(
        overloaded{
            [](const dsl::IntLiteral& l) { return l.value; },
            [&](const dsl::DiceRoll& d) { return roll_dice(d.count, d.sides, ctx.rng); },
            [&](const dsl::VarAccess& v) {
                const Value val = read_var(v, ctx, expr.span);
                if (const int* i = std::get_if<int>(&val.data)) return *i;
                throw CompileError(expr.span, "$" + v.name + " is not an integer");
            },
            [&](const dsl::Arith& a) {
                const int l = eval_int(*a.lhs, ctx);
                const int r = eval_int(*a.rhs, ctx);
                switch (a.op) {
                case dsl::ArithOp::Add: return l + r;
                case dsl::ArithOp::Sub: return l - r;
                case dsl::ArithOp::Mul: return l * r;
                case dsl::ArithOp::Div:
                    if (r == 0) throw CompileError(expr.span, "division by zero");
                    return l / r;
                }
                return 0;
            },
        },
        expr.node);
}

bool eval_condition(const dsl::CondExpr& cond, EvalContext& ctx)
{
    return std::visit(overloaded{
                          [&](const dsl::PercentCond& p) { return ctx.rng.percent(eval_int(p.percent, ctx)); },
                          [&](const dsl::CompareCond& c) {
                              const int l = eval_int(c.lhs, ctx);
                              const int r = eval_int(c.rhs, ctx);
                              switch (c.op) {
                              case dsl::CompareOp::Lt: return l < r;
                              case dsl::CompareOp::Le: return l <= r;
                              case dsl::CompareOp::Gt: return l > r;
                              case dsl::CompareOp::Ge: return l >= r;
                              case dsl::CompareOp::Eq: return l == r;
                              case dsl::CompareOp::Ne: return l != r;
                              }
                              return false;
                          },
                      },
                      cond.node);
}

namespace {

struct LayoutRetry {};

constexpr std::uint8_t kMonsterBit = 1;
constexpr std::uint8_t kObjectBit = 2;
constexpr std::uint8_t kTrapBit = 4;
constexpr std::uint8_t kBoulderBit = 8;
constexpr std::uint8_t kFeatureBit = 16;

constexpr int kMaxLoop = 10000;

struct Frame {
    Rect rect = kCanvas;
    int room = -1;
};

std::optional<Dir> parse_direction(std::string_view s)
{
    if (s == "north" || s == "n") return Dir::N;
    if (s == "south" || s == "s") return Dir::S;
    if (s == "east" || s == "e") return Dir::E;
    if (s == "west" || s == "w") return Dir::W;
    return std::nullopt;
}

std::optional<TerrainKind> door_kind(std::string_view state, Rng& rng)
{
    if (state == "random") {
        constexpr std::array<TerrainKind, 4> kinds{TerrainKind::Floor, TerrainKind::OpenDoor, TerrainKind::ClosedDoor,
                                                   TerrainKind::LockedDoor};
        return kinds[rng.index(kinds.size())];
    }
    if (state == "open") return TerrainKind::OpenDoor;
    if (state == "closed") return TerrainKind::ClosedDoor;
    if (state == "locked") return TerrainKind::LockedDoor;
    if (state == "nodoor" || state == "broken") return TerrainKind::Floor;
    if (state == "secret") return TerrainKind::SecretDoor;
    return std::nullopt;
}

std::optional<std::string> trap_name(std::string_view s)
{
    if (s == "teleport" || s == "teleportation" || s == "teleportation trap") return "teleport";
    if (s == "fire" || s == "fire trap") return "fire";
    if (s == "invisible" || s == "invisible trap") return "invisible";
    return std::nullopt;
}

class Compiler {
public:
    Compiler(const dsl::LevelDecl& level, const Catalog& catalog, std::uint64_t seed)
        : level_(level), catalog_(catalog), room_level_(std::holds_alternative<dsl::RoomType>(level.kind))
    {
        ctx_.rng = Rng(seed);
        bp_.name = level.name();
        if (const auto* maze = std::get_if<dsl::MazeType>(&level.kind)) {
            const auto fill = terrain_from_map_char(maze->fill);
            if (!fill) throw CompileError(level.span, std::string("unknown fill character '") + maze->fill + "'");
            fill_char_ = maze->fill;
            bp_.terrain.fill(*fill);
        }
    }

    LevelBlueprint run()
    {
        exec_list(level_.commands);
        finish();
        return std::move(bp_);
    }

private:
    Rng& rng() { return ctx_.rng; }

    void exec_list(const dsl::CommandList& cmds)
    {
        for (const auto& c : cmds) exec(c);
    }

    void with_frame(Frame f, const dsl::CommandList& body)
    {
        const Frame saved = frame_;
        frame_ = f;
        exec_list(body);
        frame_ = saved;
    }

    void exec(const dsl::Command& cmd)
    {
        const SourceSpan& span = cmd.span;
        std::visit(overloaded{
                       [&](const dsl::MapBlock& m) { exec_map(m, span); },
                       [&](const dsl::Geometry& g) { geometry_ = g; },
                       [&](const dsl::Region& r) { exec_region(r); },
                       [&](const dsl::Terrain& t) {
                           const TerrainKind k = terrain_of(t.terrain, span);
                           for (Coord c : eval_selection(t.target)) set_terrain(c, k);
                       },
                       [&](const dsl::ReplaceTerrain& r) {
                           const TerrainKind from = terrain_of(r.from, span);
                           const TerrainKind to = terrain_of(r.to, span);
                           const int pct = eval_int(r.percent, ctx_);
                           replace_terrain(bp_.terrain, local_rect(r.rect).clipped(frame_.rect), from, to, pct, rng());
                       },
                       [&](const dsl::Mazewalk& m) { exec_mazewalk(m, span); },
                       [&](const dsl::RandomCorridors&) {
                           try {
                               random_corridors(bp_.terrain, rooms_, rng());
                           } catch (const ConnectFailure&) {
                               throw LayoutRetry{};
                           }
                       },
                       [&](const dsl::Room& r) { exec_room(r, span); },
                       [&](const dsl::Subroom& r) { exec_subroom(r, span); },
                       [&](const dsl::RoomDoor& d) { exec_roomdoor(d, span); },
                       [&](const dsl::Door& d) {
                           const auto k = door_kind(d.state, rng());
                           if (!k) throw CompileError(span, "unknown door state '" + d.state + "'");
                           const Coord c = place(d.place, kFeatureBit, span);
                           bp_.terrain[c] = *k;
                       },
                       [&](const dsl::Monster& m) { exec_monster(m, span); },
                       [&](const dsl::Object& o) { exec_object(o, span); },
                       [&](const dsl::Trap& t) { exec_trap(t, span); },
                       [&](const dsl::Stair& s) {
                           const bool up = s.direction == dsl::StairDir::Up;
                           const Coord c = place_feature(s.place, up ? TerrainKind::StairUp : TerrainKind::StairDown,
                                                         up ? "staircase up" : "staircase down", span);
                           bp_.stairs.push_back({c, up ? StairDirection::Up : StairDirection::Down});
                       },
                       [&](const dsl::Sink& s) { place_feature(s.place, TerrainKind::Sink, "sink", span); },
                       [&](const dsl::Fountain& f) { place_feature(f.place, TerrainKind::Fountain, "fountain", span); },
                       [&](const dsl::Altar& a) { place_feature(a.place, TerrainKind::Altar, "altar", span); },
                       [&](const dsl::Branch& b) {
                           const Rect r = local_rect(b.first).clipped(frame_.rect);
                           if (r.empty()) throw CompileError(span, "BRANCH area lies outside the map");
                           branch_ = r;
                       },
                       [&](const dsl::Loop& l) {
                           const int n = eval_int(l.count, ctx_);
                           if (n > kMaxLoop) throw CompileError(span, "LOOP count " + std::to_string(n) + " too large");
                           for (int i = 0; i < n; ++i) exec_list(l.body);
                       },
                       [&](const dsl::If& i) {
                           if (eval_condition(i.condition, ctx_)) exec_list(i.then_body);
                           else if (i.else_body) exec_list(*i.else_body);
                       },
                       [&](const dsl::VarAssign& v) { ctx_.variables[v.name] = eval_value(v.value, span); },
                       [&](const dsl::Shuffle& s) {
                           auto it = ctx_.variables.find(s.name);
                           if (it == ctx_.variables.end()) throw UnboundVariable(span, s.name);
                           std::visit(overloaded{[&](std::vector<char>& a) { rng().shuffle(std::span(a)); },
                                                 [&](std::vector<std::string>& a) { rng().shuffle(std::span(a)); },
                                                 [&](std::vector<Coord>& a) { rng().shuffle(std::span(a)); },
                                                 [&](auto&) {
                                                     throw CompileError(span, "SHUFFLE needs an array, $" + s.name +
                                                                                  " is not one");
                                                 }},
                                      it->second.data);
                       },
                       [&](const dsl::ProbStatement& p) {
                           if (rng().percent(eval_int(p.percent, ctx_))) exec(*p.inner);
                       },
                   },
                   cmd.node);
    }

    // -- coordinates -------------------------------------------------------

    [[nodiscard]] Coord origin() const { return {frame_.rect.x1, frame_.rect.y1}; }
    [[nodiscard]] Rect local_rect(const dsl::RectLit& r) const
    {
        return Rect{std::min(r.x1, r.x2), std::min(r.y1, r.y2), std::max(r.x1, r.x2), std::max(r.y1, r.y2)}.translated(
            origin());
    }

    /// Canvas coordinate of an expression; nullopt for `random`. Not bounds-checked.
    std::optional<Coord> resolve_coord(const dsl::CoordExpr& e)
    {
        return std::visit(overloaded{
                              [&](const dsl::AbsoluteCoord& a) -> std::optional<Coord> { return Coord{a.x, a.y} + origin(); },
                              [&](const dsl::RandomCoord&) -> std::optional<Coord> { return std::nullopt; },
                              [&](const dsl::RndCoord& r) -> std::optional<Coord> {
                                  const Selection sel = eval_selection(*r.selection);
                                  if (sel.empty()) throw CompileError(e.span, "rndcoord on an empty selection");
                                  return sel[rng().index(sel.size())];
                              },
                              [&](const dsl::VarAccess& v) -> std::optional<Coord> {
                                  const Value val = read_var(v, ctx_, e.span);
                                  if (const Coord* c = std::get_if<Coord>(&val.data)) return *c + origin();
                                  if (const CellSet* s = std::get_if<CellSet>(&val.data); s && s->cells.size() == 1)
                                      return s->cells.front() + origin();
                                  throw CompileError(e.span, "$" + v.name + " is not a coordinate");
                              },
                          },
                          e.node);
    }

    Coord resolve_coord_or_random(const dsl::CoordExpr& e)
    {
        if (auto c = resolve_coord(e)) return *c;
        return random_cell([&](Coord c) { return is_open_ground(bp_.terrain[c]); }, e.span);
    }

    template <typename Pred>
    Coord random_cell(Pred&& ok, const SourceSpan& span)
    {
        std::vector<Rect> excluded;
        for (const auto& r : rooms_)
            if (r.parent && *r.parent == frame_.room) excluded.push_back(r.walls());
        const bool any_room = room_level_ && frame_.room < 0;
        std::vector<Rect> top_rooms;
        if (any_room)
            for (const auto& r : rooms_)
                if (!r.parent) top_rooms.push_back(r.interior);
        if (any_room && top_rooms.empty()) throw CompileError(span, "random placement before any ROOM");
        for (int attempt = 0; attempt < kPlacementAttempts; ++attempt) {
            const Rect area = any_room ? top_rooms[rng().index(top_rooms.size())] : frame_.rect;
            const Coord c{rng().range(area.x1, area.x2), rng().range(area.y1, area.y2)};
            if (std::any_of(excluded.begin(), excluded.end(), [&](const Rect& r) { return r.contains(c); })) continue;
            if (ok(c)) return c;
        }
        throw CompileError(span, "no free cell for a random placement after " + std::to_string(kPlacementAttempts) +
                                     " attempts");
    }

    bool admits(Coord c, std::uint8_t bit) const
    {
        const TerrainKind t = bp_.terrain[c];
        const std::uint8_t o = occupied_[c];
        switch (bit) {
        case kMonsterBit: return admits_entities(t) && (o & (kMonsterBit | kBoulderBit)) == 0;
        case kBoulderBit: return admits_entities(t) && (o & (kMonsterBit | kBoulderBit)) == 0;
        case kObjectBit: return admits_entities(t) && (o & (kObjectBit | kBoulderBit)) == 0;
        case kTrapBit: return is_open_ground(t) && (o & (kTrapBit | kFeatureBit)) == 0;
        default: return is_open_ground(t) && (o & (kTrapBit | kFeatureBit | kBoulderBit)) == 0;
        }
    }

    /// Resolve a placement coordinate for an entity of the given kind.
    Coord place(const dsl::CoordExpr& e, std::uint8_t bit, const SourceSpan& span)
    {
        if (auto c = resolve_coord(e)) {
            if (!frame_.rect.contains(*c)) {
                const Coord local = *c - origin();
                throw CompileError(span, "coordinate " + to_string(local) + " is outside the map");
            }
            if (bit != kFeatureBit && !admits_entities(bp_.terrain[*c])) bp_.terrain[*c] = TerrainKind::Floor;
            const std::uint8_t clash = bit == kMonsterBit || bit == kBoulderBit ? (kMonsterBit | kBoulderBit) : bit;
            if (bit != kFeatureBit && (occupied_[*c] & clash) != 0) make_room(*c, clash, span);
            occupied_[*c] |= bit;
            last_random_ = false;
            return *c;
        }
        const Coord c = random_cell([&](Coord p) { return is_open_ground(bp_.terrain[p]) && admits(p, bit); }, span);
        occupied_[c] |= bit;
        last_random_ = true;
        return c;
    }

    /// An explicit placement wins over randomly placed entities on its cell.
    void make_room(Coord c, std::uint8_t clash, const SourceSpan& span)
    {
        for (std::size_t i = 0; i < bp_.placements.size(); ++i) {
            Placement& p = bp_.placements[i];
            if (p.pos != c || (bit_of(p) & clash) == 0) continue;
            if (!random_[i]) throw CompileError(span, "cell " + to_string(c - origin()) + " is already taken");
            relocate(p, c);
        }
    }

    void add(Placement p)
    {
        bp_.placements.push_back(std::move(p));
        random_.push_back(last_random_);
    }

    Coord place_feature(const dsl::CoordExpr& e, TerrainKind kind, const std::string& name, const SourceSpan& span)
    {
        const Coord c = place(e, kFeatureBit, span);
        bp_.terrain[c] = kind;
        Placement p;
        p.kind = PlacementKind::Feature;
        p.name = name;
        p.cls = map_char(kind);
        p.pos = c;
        p.hostile = false;
        add(std::move(p));
        return c;
    }

    void set_terrain(Coord c, TerrainKind k)
    {
        if (bp_.terrain.contains(c)) bp_.terrain[c] = k;
    }

    // -- values ------------------------------------------------------------

    using AtomValue = std::variant<char, std::string>;

    AtomValue eval_atom(const dsl::Atom& a, const SourceSpan& span)
    {
        return std::visit(overloaded{
                              [](const dsl::CharLit& c) -> AtomValue { return c.value; },
                              [](const dsl::StrLit& s) -> AtomValue { return s.value; },
                              [&](const dsl::VarAccess& v) -> AtomValue {
                                  const Value val = read_var(v, ctx_, span);
                                  if (const char* c = std::get_if<char>(&val.data)) return *c;
                                  if (const auto* s = std::get_if<std::string>(&val.data)) return *s;
                                  throw CompileError(span, "$" + v.name + " is not a character or string");
                              },
                          },
                          a);
    }

    TerrainKind terrain_of(const dsl::Atom& a, const SourceSpan& span)
    {
        const AtomValue v = eval_atom(a, span);
        const char* c = std::get_if<char>(&v);
        if (!c) throw CompileError(span, "terrain must be a character");
        const auto k = terrain_from_map_char(*c);
        if (!k) throw CompileError(span, std::string("unknown terrain character '") + *c + "'");
        return *k;
    }

    Selection eval_selection(const dsl::SelectionExpr& s)
    {
        Selection out = std::visit(
            overloaded{
                [&](const dsl::PointSel& p) { return Selection{resolve_coord_or_random(p.at)}; },
                [&](const dsl::FillRectSel& f) { return select_fillrect(local_rect(f.rect), frame_.rect); },
                [&](const dsl::RectSel& r) { return select_rect(local_rect(r.rect), frame_.rect); },
                [&](const dsl::LineSel& l) {
                    return select_line(clamp_frame(resolve_coord_or_random(l.from)),
                                       clamp_frame(resolve_coord_or_random(l.to)));
                },
                [&](const dsl::RandLineSel& l) {
                    const Coord a = resolve_coord_or_random(l.from);
                    const Coord b = resolve_coord_or_random(l.to);
                    const int rough = eval_int(l.roughness, ctx_);
                    if (rough < 0) throw CompileError(s.span, "negative randline roughness");
                    return select_randline(a, b, rough, rng(), frame_.rect);
                },
                [&](const dsl::FilterSel& f) {
                    const int pct = eval_int(f.percent, ctx_);
                    return select_filter(eval_selection(*f.inner), pct, rng());
                },
                [&](const dsl::UnionSel& u) {
                    Selection all;
                    for (const auto& part : u.parts) {
                        const Selection p = eval_selection(part);
                        all.insert(all.end(), p.begin(), p.end());
                    }
                    return all;
                },
                [&](const dsl::VarAccess& v) {
                    const Value val = read_var(v, ctx_, s.span);
                    Selection sel;
                    if (const auto* vs = std::get_if<CellSet>(&val.data)) sel = vs->cells;
                    else if (const auto* c = std::get_if<Coord>(&val.data)) sel = {*c};
                    else if (const auto* cs = std::get_if<std::vector<Coord>>(&val.data)) sel = *cs;
                    else throw CompileError(s.span, "$" + v.name + " is not a selection");
                    for (Coord& c : sel) c = c + origin();
                    return sel;
                },
            },
            s.node);
        std::erase_if(out, [](Coord c) { return !in_canvas(c); });
        normalize(out);
        return out;
    }

    [[nodiscard]] Coord clamp_frame(Coord c) const
    {
        return {std::clamp(c.x, frame_.rect.x1, frame_.rect.x2), std::clamp(c.y, frame_.rect.y1, frame_.rect.y2)};
    }

    Value eval_value(const dsl::ValueExpr& v, const SourceSpan& span)
    {
        return std::visit(
            overloaded{
                [&](const dsl::IntExpr& e) -> Value {
                    if (const auto* var = std::get_if<dsl::VarAccess>(&e.node)) return read_var(*var, ctx_, e.span);
                    return Value{eval_int(e, ctx_), {}};
                },
                [](const dsl::CharLit& c) -> Value { return Value{c.value, {}}; },
                [](const dsl::StrLit& s) -> Value { return Value{s.value, {}}; },
                [&](const dsl::ArrayLit& a) -> Value {
                    Value out;
                    out.tag = a.tag;
                    if (a.elements.empty()) throw CompileError(span, "empty array");
                    if (std::holds_alternative<dsl::CharLit>(a.elements.front())) {
                        std::vector<char> xs;
                        for (const auto& e : a.elements) xs.push_back(std::get<dsl::CharLit>(e).value);
                        out.data = std::move(xs);
                    } else if (std::holds_alternative<dsl::StrLit>(a.elements.front())) {
                        std::vector<std::string> xs;
                        for (const auto& e : a.elements) xs.push_back(std::get<dsl::StrLit>(e).value);
                        out.data = std::move(xs);
                    } else {
                        std::vector<Coord> xs;
                        for (const auto& e : a.elements) {
                            const auto& c = std::get<dsl::CoordLit>(e);
                            xs.push_back({c.x, c.y});
                        }
                        out.data = std::move(xs);
                    }
                    return out;
                },
                [&](const dsl::SelectionValue& s) -> Value {
                    Selection sel = eval_selection(s.selection);
                    for (Coord& c : sel) c = c - origin();
                    return Value{CellSet{std::move(sel)}, "selection"};
                },
                [&](const dsl::CoordValue& c) -> Value {
                    return Value{resolve_coord_or_random(c.coord) - origin(), {}};
                },
            },
            v);
    }

    // -- commands ----------------------------------------------------------

    void exec_map(const dsl::MapBlock& m, const SourceSpan& span)
    {
        int w = 0;
        for (const auto& row : m.rows) w = std::max(w, static_cast<int>(row.size()));
        const int h = static_cast<int>(m.rows.size());
        if (w == 0 || h == 0) throw CompileError(span, "empty MAP");
        if (w > kMapWidth || h > kMapHeight)
            throw CompileError(span, "MAP of " + std::to_string(w) + "x" + std::to_string(h) + " exceeds the " +
                                         std::to_string(kMapWidth) + "x" + std::to_string(kMapHeight) + " canvas");
        const int free_x = kMapWidth - w;
        const int free_y = kMapHeight - h;
        int x0 = free_x / 2;
        const std::string& ha = geometry_.halign;
        if (ha == "left") x0 = std::min(1, free_x);
        else if (ha == "half-left") x0 = free_x / 4;
        else if (ha == "half-right") x0 = 3 * free_x / 4;
        else if (ha == "right") x0 = std::max(0, free_x - 1);
        int y0 = free_y / 2;
        const std::string& va = geometry_.valign;
        if (va == "top") y0 = std::min(1, free_y);
        else if (va == "bottom") y0 = std::max(0, free_y - 1);
        for (int y = 0; y < h; ++y) {
            const std::string& row = m.rows[static_cast<std::size_t>(y)];
            for (int x = 0; x < w; ++x) {
                const char ch = x < static_cast<int>(row.size()) ? row[static_cast<std::size_t>(x)] : fill_char_;
                const auto k = terrain_from_map_char(ch);
                if (!k) throw CompileError(span, std::string("unknown map character '") + ch + "'");
                const Coord c{x0 + x, y0 + y};
                bp_.terrain[c] = *k;
                if (*k == TerrainKind::StairUp) bp_.stairs.push_back({c, StairDirection::Up});
                if (*k == TerrainKind::StairDown) bp_.stairs.push_back({c, StairDirection::Down});
            }
        }
        frame_.rect = {x0, y0, x0 + w - 1, y0 + h - 1};
        bp_.map_frame = frame_.rect;
    }

    void light(const Rect& r, dsl::Lighting l)
    {
        const bool on = l == dsl::Lighting::Lit || (l == dsl::Lighting::Random && rng().percent(50));
        const Rect c = r.clipped(kCanvas);
        for (int y = c.y1; y <= c.y2; ++y)
            for (int x = c.x1; x <= c.x2; ++x) bp_.lit.at(x, y) = on ? 1 : 0;
    }

    void exec_region(const dsl::Region& r) { light(local_rect(r.rect).clipped(frame_.rect), r.lighting); }

    void exec_mazewalk(const dsl::Mazewalk& m, const SourceSpan& span)
    {
        const auto dir = parse_direction(m.direction);
        if (!dir) throw CompileError(span, "unknown direction '" + m.direction + "'");
        const Coord entry = resolve_coord_or_random(m.entry);
        try {
            mazewalk(bp_.terrain, frame_.rect, entry, *dir, rng());
        } catch (const std::exception& e) {
            throw CompileError(span, e.what());
        }
    }

    void exec_room(const dsl::Room& r, const SourceSpan& span)
    {
        RoomRequest req;
        if (r.pos) req.pos = Coord{r.pos->x, r.pos->y};
        req.align = r.align;
        if (r.size) req.size = Coord{r.size->x, r.size->y};
        Rect interior;
        try {
            interior = place_room(req, rooms_, rng());
        } catch (const PlacementFailure&) {
            if (req.pos && req.size && req.align) throw CompileError(span, "ROOM does not fit");
            throw LayoutRetry{};
        }
        carve_room(bp_.terrain, interior);
        light(interior.expanded(1), r.lighting);
        rooms_.push_back({interior, bp_.lit[{interior.x1, interior.y1}] != 0, std::nullopt});
        bp_.rooms.push_back(interior);
        with_frame({interior, static_cast<int>(rooms_.size()) - 1}, r.body);
    }

    void exec_subroom(const dsl::Subroom& r, const SourceSpan& span)
    {
        if (frame_.room < 0) throw CompileError(span, "SUBROOM outside a ROOM");
        const Rect parent = rooms_[static_cast<std::size_t>(frame_.room)].interior;
        const Rect interior{parent.x1 + r.pos.x, parent.y1 + r.pos.y, parent.x1 + r.pos.x + r.size.x - 1,
                            parent.y1 + r.pos.y + r.size.y - 1};
        const Rect walls = interior.expanded(1);
        if (r.size.x < 1 || r.size.y < 1 || walls.clipped(parent) != walls)
            throw CompileError(span, "SUBROOM does not fit inside its parent room");
        carve_room(bp_.terrain, interior);
        light(walls, r.lighting);
        rooms_.push_back({interior, bp_.lit[{interior.x1, interior.y1}] != 0, frame_.room});
        with_frame({interior, static_cast<int>(rooms_.size()) - 1}, r.body);
    }

    void exec_roomdoor(const dsl::RoomDoor& d, const SourceSpan& span)
    {
        if (frame_.room < 0) throw CompileError(span, "ROOMDOOR outside a ROOM");
        const Rect in = rooms_[static_cast<std::size_t>(frame_.room)].interior;
        const Rect w = in.expanded(1);
        std::string wall = d.wall;
        if (wall == "random") {
            constexpr std::array<const char*, 4> walls{"north", "south", "east", "west"};
            wall = walls[rng().index(walls.size())];
        }
        const bool horizontal = wall == "north" || wall == "south";
        if (!horizontal && wall != "east" && wall != "west") throw CompileError(span, "unknown wall '" + d.wall + "'");
        const int len = horizontal ? in.width() : in.height();
        const int pos = d.pos ? *d.pos : rng().range(0, len - 1);
        if (pos < 0 || pos >= len) throw CompileError(span, "door position " + std::to_string(pos) + " off the wall");
        Coord c;
        if (wall == "north") c = {in.x1 + pos, w.y1};
        else if (wall == "south") c = {in.x1 + pos, w.y2};
        else if (wall == "west") c = {w.x1, in.y1 + pos};
        else c = {w.x2, in.y1 + pos};
        const auto k = d.secret ? std::optional(TerrainKind::SecretDoor) : door_kind(d.state, rng());
        if (!k) throw CompileError(span, "unknown door state '" + d.state + "'");
        bp_.terrain[c] = *k;
    }

    std::string atom_text(const AtomValue& v) const
    {
        if (const char* c = std::get_if<char>(&v)) return std::string(1, *c);
        return std::get<std::string>(v);
    }

    void exec_monster(const dsl::Monster& m, const SourceSpan& span)
    {
        std::optional<char> cls;
        std::optional<std::string> name;
        auto absorb = [&](const AtomValue& v) {
            if (const char* c = std::get_if<char>(&v)) cls = *c;
            else name = std::get<std::string>(v);
        };
        if (m.spec.cls) absorb(eval_atom(*m.spec.cls, span));
        if (m.spec.name) absorb(eval_atom(*m.spec.name, span));
        std::size_t idx = 0;
        if (name) {
            const auto found = catalog_.find_monster(*name);
            if (!found) throw UnknownEntity(span, "monster \"" + *name + "\"");
            if (cls && catalog_.monsters()[*found].cls != *cls)
                throw UnknownEntity(span, "monster \"" + *name + "\" of class '" + std::string(1, *cls) + "'");
            idx = *found;
        } else if (cls) {
            const auto pool = catalog_.monsters_of_class(*cls);
            if (pool.empty()) throw UnknownEntity(span, "monster class '" + std::string(1, *cls) + "'");
            idx = pool[rng().index(pool.size())];
        } else {
            const auto pool = catalog_.random_monsters();
            idx = pool[rng().index(pool.size())];
        }
        const MonsterKind& kind = catalog_.monsters()[idx];
        Placement p;
        p.kind = PlacementKind::Monster;
        p.name = kind.name;
        p.cls = kind.cls;
        p.hostile = kind.hostile;
        for (const auto& arg : m.args) {
            if (arg == "asleep") p.asleep = true;
            else if (arg == "awake") p.asleep = false;
            else if (arg == "hostile") p.hostile = true;
            else if (arg == "peaceful") p.hostile = false;
            else throw CompileError(span, "unknown monster argument '" + arg + "'");
        }
        p.pos = place(m.place, kMonsterBit, span);
        add(std::move(p));
    }

    void exec_object(const dsl::Object& o, const SourceSpan& span)
    {
        std::optional<char> cls;
        std::optional<std::string> name;
        auto absorb = [&](const AtomValue& v) {
            if (const char* c = std::get_if<char>(&v)) cls = *c;
            else name = std::get<std::string>(v);
        };
        if (o.spec.cls) absorb(eval_atom(*o.spec.cls, span));
        if (o.spec.name) absorb(eval_atom(*o.spec.name, span));
        std::size_t idx = 0;
        if (name) {
            const auto found = catalog_.find_object(*name, cls);
            if (!found) throw UnknownEntity(span, "object \"" + *name + "\"");
            idx = *found;
        } else {
            std::vector<std::size_t> pool;
            if (cls) {
                for (std::size_t i : catalog_.objects_of_class(*cls))
                    if (catalog_.objects()[i].random_ok) pool.push_back(i);
            } else {
                pool = catalog_.random_objects();
            }
            if (pool.empty()) throw UnknownEntity(span, "object class '" + std::string(1, cls.value_or('?')) + "'");
            idx = pool[rng().index(pool.size())];
        }
        const ObjectKind& kind = catalog_.objects()[idx];
        Placement p;
        p.kind = PlacementKind::Object;
        p.name = kind.name;
        p.cls = kind.cls;
        p.hostile = false;
        if (o.quantity) {
            if (*o.quantity < 1) throw CompileError(span, "object quantity must be positive");
            p.quantity = *o.quantity;
        }
        if (o.montype) p.montype = atom_text(eval_atom(*o.montype, span));
        const bool boulder = kind.name == "boulder";
        p.pos = place(o.place, boulder ? kBoulderBit : kObjectBit, span);
        add(std::move(p));
    }

    void exec_trap(const dsl::Trap& t, const SourceSpan& span)
    {
        std::string name;
        if (t.name) {
            const std::string raw = atom_text(eval_atom(*t.name, span));
            const auto n = trap_name(raw);
            if (!n) throw UnknownEntity(span, "trap \"" + raw + "\"");
            name = *n;
        } else {
            name = rng().percent(50) ? "teleport" : "fire";
        }
        Placement p;
        p.kind = PlacementKind::Trap;
        p.name = name;
        p.cls = '^';
        p.hostile = false;
        p.pos = place(t.place, kTrapBit, span);
        add(std::move(p));
    }

    // -- wrap-up -----------------------------------------------------------

    [[nodiscard]] bool start_ok(Coord c) const
    {
        const TerrainKind t = bp_.terrain[c];
        return agent_enterable(t) && t != TerrainKind::Lava && (occupied_[c] & (kMonsterBit | kBoulderBit)) == 0;
    }

    void finish()
    {
        for (auto& p : bp_.placements) {
            if (p.kind != PlacementKind::Feature) {
                if (!admits_entities(bp_.terrain[p.pos])) relocate(p);
                continue;
            }
            if (map_char(bp_.terrain[p.pos]) == p.cls) continue;
            const Coord was = p.pos;
            relocate(p);
            bp_.terrain[p.pos] = *terrain_from_map_char(p.cls);
            for (auto& s : bp_.stairs)
                if (s.pos == was) s.pos = p.pos;
        }
        if (branch_) {
            std::optional<Coord> pick;
            for (int attempt = 0; attempt < kPlacementAttempts && !pick; ++attempt) {
                const Coord c{rng().range(branch_->x1, branch_->x2), rng().range(branch_->y1, branch_->y2)};
                if (start_ok(c)) pick = c;
            }
            if (!pick) {
                pick = Coord{branch_->x1, branch_->y1};
                if (!agent_enterable(bp_.terrain[*pick]) || bp_.terrain[*pick] == TerrainKind::Lava)
                    bp_.terrain[*pick] = TerrainKind::Floor;
                evict(*pick);
            }
            bp_.start_pos = pick;
        } else {
            for (const auto& s : bp_.stairs)
                if (s.direction == StairDirection::Up && start_ok(s.pos)) {
                    bp_.start_pos = s.pos;
                    break;
                }
        }
    }

    static std::uint8_t bit_of(const Placement& p)
    {
        switch (p.kind) {
        case PlacementKind::Monster: return kMonsterBit;
        case PlacementKind::Trap: return kTrapBit;
        case PlacementKind::Object: return p.name == "boulder" ? kBoulderBit : kObjectBit;
        default: return kFeatureBit;
        }
    }

    /// Move a placement to a random free cell of the level, e.g. when later terrain buried it.
    void relocate(Placement& p, std::optional<Coord> avoid = std::nullopt)
    {
        const std::uint8_t bit = bit_of(p);
        const Frame saved = frame_;
        frame_ = {bp_.map_frame, -1};
        const Coord to = random_cell(
            [&](Coord q) { return q != avoid && is_open_ground(bp_.terrain[q]) && admits(q, bit); }, level_.span);
        frame_ = saved;
        occupied_[p.pos] &= static_cast<std::uint8_t>(~bit);
        occupied_[to] |= bit;
        p.pos = to;
    }

    /// Move a monster or boulder off the start cell.
    void evict(Coord c)
    {
        for (auto& p : bp_.placements) {
            const std::uint8_t bit = bit_of(p);
            if ((bit == kMonsterBit || bit == kBoulderBit) && p.pos == c) relocate(p, c);
        }
    }

    const dsl::LevelDecl& level_;
    const Catalog& catalog_;
    bool room_level_;
    char fill_char_ = ' ';
    EvalContext ctx_;
    LevelBlueprint bp_;
    Grid<std::uint8_t> occupied_{kMapWidth, kMapHeight, 0};
    std::vector<PlacedRoom> rooms_;
    Frame frame_;
    dsl::Geometry geometry_;
    std::optional<Rect> branch_;
    bool last_random_ = false;
    std::vector<bool> random_;
};

}  // namespace

LevelBlueprint compile(const dsl::DesDocument& doc, std::string_view level_name, std::uint64_t seed,
                       const Catalog& catalog)
{
    const dsl::LevelDecl* level = doc.find(level_name);
    if (!level) throw CompileError({}, "no level named \"" + std::string(level_name) + "\"");
    Rng attempts(seed);
    for (int attempt = 0; attempt < kLayoutRetries; ++attempt) {
        const std::uint64_t s = attempt == 0 ? seed : attempts.next();
        try {
            return Compiler(*level, catalog, s).run();
        } catch (const LayoutRetry&) {
            continue;
        }
    }
    throw CompileError(level->span, "no valid room layout after " + std::to_string(kLayoutRetries) + " attempts");
}

LevelBlueprint compile(const dsl::DesDocument& doc, std::uint64_t seed, const Catalog& catalog)
{
    if (doc.levels.empty()) throw CompileError({}, "document has no levels");
    return compile(doc, doc.levels.front().name(), seed, catalog);
}

}  // namespace hackbox::gen
