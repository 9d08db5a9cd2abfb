#include <cctype>
#include <sstream>

#include "hackbox/dsl/parser.hpp"

namespace hackbox::dsl {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string print(const IntExpr& e);
std::string print(const SelectionExpr& s);

std::string print(const VarAccess& v)
{
    std::string out = "$" + v.name;
    if (v.index) out += "[" + print(**v.index) + "]";
    return out;
}

std::string print(const IntExpr& e)
{
    return std::visit(overloaded{
                          [](const IntLiteral& l) { return std::to_string(l.value); },
                          [](const DiceRoll& d) { return std::to_string(d.count) + "d" + std::to_string(d.sides); },
                          [](const VarAccess& v) { return print(v); },
                          [](const Arith& a) {
                              const char* op = a.op == ArithOp::Add   ? " + "
                                               : a.op == ArithOp::Sub ? " - "
                                               : a.op == ArithOp::Mul ? " * "
                                                                      : " / ";
                              return "(" + print(*a.lhs) + op + print(*a.rhs) + ")";
                          },
                      },
                      e.node);
}

std::string print_percent(const IntExpr& e)
{
    if (const auto* l = std::get_if<IntLiteral>(&e.node)) return std::to_string(l->value) + "%";
    return print(e) + "%";
}

std::string print_char(char c) { return std::string("'") + c + "'"; }
std::string print_string(const std::string& s) { return "\"" + s + "\""; }

std::string print(const Atom& a)
{
    return std::visit(overloaded{
                          [](const CharLit& c) { return print_char(c.value); },
                          [](const StrLit& s) { return print_string(s.value); },
                          [](const VarAccess& v) { return print(v); },
                      },
                      a);
}

std::string print(const RectLit& r)
{
    return "(" + std::to_string(r.x1) + "," + std::to_string(r.y1) + "," + std::to_string(r.x2) + "," +
           std::to_string(r.y2) + ")";
}

std::string print(const CoordLit& c) { return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")"; }

std::string print(const CoordExpr& c)
{
    return std::visit(overloaded{
                          [](const AbsoluteCoord& a) { return "(" + std::to_string(a.x) + "," + std::to_string(a.y) + ")"; },
                          [](const RandomCoord&) { return std::string("random"); },
                          [](const RndCoord& r) { return "rndcoord " + print(*r.selection); },
                          [](const VarAccess& v) { return print(v); },
                      },
                      c.node);
}

std::string print(const SelectionExpr& s)
{
    return std::visit(overloaded{
                          [](const PointSel& p) { return print(p.at); },
                          [](const FillRectSel& f) { return "fillrect " + print(f.rect); },
                          [](const RectSel& r) { return "rect " + print(r.rect); },
                          [](const LineSel& l) { return "line " + print(l.from) + "," + print(l.to); },
                          [](const RandLineSel& r) {
                              return "randline " + print(r.from) + "," + print(r.to) + "," + print(r.roughness);
                          },
                          [](const FilterSel& f) { return "filter(" + print_percent(f.percent) + "," + print(*f.inner) + ")"; },
                          [](const UnionSel& u) {
                              std::string out;
                              for (std::size_t i = 0; i < u.parts.size(); ++i) {
                                  if (i) out += " | ";
                                  out += print(u.parts[i]);
                              }
                              return out;
                          },
                          [](const VarAccess& v) { return print(v); },
                      },
                      s.node);
}

std::string print(const CondExpr& c)
{
    return std::visit(overloaded{
                          [](const PercentCond& p) { return print_percent(p.percent); },
                          [](const CompareCond& cc) {
                              constexpr const char* ops[] = {" < ", " <= ", " > ", " >= ", " == ", " != "};
                              return print(cc.lhs) + ops[static_cast<int>(cc.op)] + print(cc.rhs);
                          },
                      },
                      c.node);
}

std::string print(const EntitySpec& e)
{
    if (e.random) return "random";
    if (e.cls && e.name) return "(" + print(*e.cls) + "," + print(*e.name) + ")";
    if (e.name) return print(*e.name);
    return print(*e.cls);
}

std::string print(const ValueExpr& v)
{
    return std::visit(overloaded{
                          [](const IntExpr& e) { return print(e); },
                          [](const CharLit& c) { return print_char(c.value); },
                          [](const StrLit& s) { return print_string(s.value); },
                          [](const ArrayLit& a) {
                              std::string out = a.tag.empty() ? "{ " : a.tag + ":{ ";
                              for (std::size_t i = 0; i < a.elements.size(); ++i) {
                                  if (i) out += ", ";
                                  out += std::visit(overloaded{
                                                        [](const CharLit& c) { return print_char(c.value); },
                                                        [](const StrLit& s) { return print_string(s.value); },
                                                        [](const CoordLit& c) { return print(c); },
                                                    },
                                                    a.elements[i]);
                              }
                              return out + " }";
                          },
                          [](const SelectionValue& s) { return "selection:" + print(s.selection); },
                          [](const CoordValue& c) { return print(c.coord); },
                      },
                      v);
}

std::string lighting_name(Lighting l)
{
    switch (l) {
    case Lighting::Lit: return "lit";
    case Lighting::Unlit: return "unlit";
    default: return "random";
    }
}

bool is_plain_ident(const std::string& s)
{
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
}

void print_body(std::ostringstream& out, const CommandList& body, int indent)
{
    out << " {\n";
    for (const auto& c : body) out << print_command(c, indent + 1) << "\n";
    out << std::string(static_cast<std::size_t>(indent) * 2, ' ') << "}";
}

}  // namespace

std::string print_command(const Command& cmd, int indent)
{
    std::ostringstream out;
    out << std::string(static_cast<std::size_t>(indent) * 2, ' ');
    std::visit(overloaded{
                   [&](const MapBlock& m) {
                       out << "MAP\n";
                       for (const auto& r : m.rows) out << r << "\n";
                       out << std::string(static_cast<std::size_t>(indent) * 2, ' ') << "ENDMAP";
                   },
                   [&](const Geometry& g) { out << "GEOMETRY:" << g.halign << "," << g.valign; },
                   [&](const Region& r) {
                       out << "REGION:" << print(r.rect) << "," << lighting_name(r.lighting) << "," << print_string(r.type);
                   },
                   [&](const Terrain& t) { out << "TERRAIN:" << print(t.target) << "," << print(t.terrain); },
                   [&](const ReplaceTerrain& r) {
                       out << "REPLACE_TERRAIN:" << print(r.rect) << "," << print(r.from) << "," << print(r.to) << ","
                           << print_percent(r.percent);
                   },
                   [&](const Mazewalk& m) { out << "MAZEWALK:" << print(m.entry) << "," << m.direction; },
                   [&](const RandomCorridors&) { out << "RANDOM_CORRIDORS"; },
                   [&](const Room& r) {
                       out << "ROOM:" << print_string(r.type) << "," << lighting_name(r.lighting) << ","
                           << (r.pos ? print(*r.pos) : "random") << ","
                           << (r.align ? "(" + r.align->first + "," + r.align->second + ")" : "random") << ","
                           << (r.size ? print(*r.size) : "random");
                       print_body(out, r.body, indent);
                   },
                   [&](const Subroom& r) {
                       out << "SUBROOM:" << print_string(r.type) << "," << lighting_name(r.lighting) << "," << print(r.pos)
                           << "," << print(r.size);
                       print_body(out, r.body, indent);
                   },
                   [&](const RoomDoor& d) {
                       out << "ROOMDOOR:" << (d.secret ? "true" : "false") << "," << d.state << "," << d.wall << ","
                           << (d.pos ? std::to_string(*d.pos) : "random");
                   },
                   [&](const Door& d) { out << "DOOR:" << d.state << "," << print(d.place); },
                   [&](const Monster& m) {
                       out << "MONSTER:" << print(m.spec) << "," << print(m.place);
                       for (const auto& a : m.args) out << "," << (is_plain_ident(a) ? a : print_string(a));
                   },
                   [&](const Object& o) {
                       out << "OBJECT:" << print(o.spec) << "," << print(o.place);
                       if (o.montype) out << ",montype:" << print(*o.montype);
                       if (o.quantity) out << "," << *o.quantity;
                   },
                   [&](const Trap& t) { out << "TRAP:" << (t.name ? print(*t.name) : "random") << "," << print(t.place); },
                   [&](const Stair& s) {
                       out << "STAIR:" << print(s.place) << "," << (s.direction == StairDir::Up ? "up" : "down");
                   },
                   [&](const Sink& s) { out << "SINK:" << print(s.place); },
                   [&](const Fountain& f) { out << "FOUNTAIN:" << print(f.place); },
                   [&](const Altar& a) { out << "ALTAR:" << print(a.place) << "," << a.align << "," << a.type; },
                   [&](const Branch& b) { out << "BRANCH:" << print(b.first) << "," << print(b.second); },
                   [&](const Loop& l) {
                       out << "LOOP [" << print(l.count) << "]";
                       print_body(out, l.body, indent);
                   },
                   [&](const If& f) {
                       out << "IF[" << print(f.condition) << "]";
                       print_body(out, f.then_body, indent);
                       if (f.else_body) {
                           out << " ELSE";
                           print_body(out, *f.else_body, indent);
                       }
                   },
                   [&](const VarAssign& a) { out << "$" << a.name << " = " << print(a.value); },
                   [&](const Shuffle& s) { out << "SHUFFLE:$" << s.name; },
                   [&](const ProbStatement& p) { out << "[" << print_percent(p.percent) << "] " << print_command(*p.inner, 0); },
               },
               cmd.node);
    return out.str();
}

std::string print_document(const DesDocument& doc)
{
    std::ostringstream out;
    for (std::size_t i = 0; i < doc.levels.size(); ++i) {
        const auto& level = doc.levels[i];
        if (i) out << "\n";
        std::visit(overloaded{
                       [&](const MazeType& m) { out << "MAZE:" << print_string(m.name) << "," << print_char(m.fill) << "\n"; },
                       [&](const RoomType& r) { out << "LEVEL:" << print_string(r.name) << "\n"; },
                   },
                   level.kind);
        for (const auto& c : level.commands) out << print_command(c) << "\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Span traversal
// ---------------------------------------------------------------------------

namespace {

using SpanFn = std::function<void(SourceSpan&)>;

void walk(IntExpr& e, const SpanFn& fn);
void walk(SelectionExpr& s, const SpanFn& fn);
void walk(CommandList& list, const SpanFn& fn);
void walk(Command& c, const SpanFn& fn);

void walk(VarAccess& v, const SpanFn& fn)
{
    if (v.index) walk(**v.index, fn);
}

void walk(Atom& a, const SpanFn& fn)
{
    if (auto* v = std::get_if<VarAccess>(&a)) walk(*v, fn);
}

void walk(IntExpr& e, const SpanFn& fn)
{
    fn(e.span);
    if (auto* v = std::get_if<VarAccess>(&e.node)) walk(*v, fn);
    if (auto* a = std::get_if<Arith>(&e.node)) {
        walk(*a->lhs, fn);
        walk(*a->rhs, fn);
    }
}

void walk(CoordExpr& c, const SpanFn& fn)
{
    fn(c.span);
    if (auto* v = std::get_if<VarAccess>(&c.node)) walk(*v, fn);
    if (auto* r = std::get_if<RndCoord>(&c.node)) walk(*r->selection, fn);
}

void walk(SelectionExpr& s, const SpanFn& fn)
{
    fn(s.span);
    std::visit(overloaded{
                   [&](PointSel& p) { walk(p.at, fn); },
                   [&](FillRectSel&) {},
                   [&](RectSel&) {},
                   [&](LineSel& l) {
                       walk(l.from, fn);
                       walk(l.to, fn);
                   },
                   [&](RandLineSel& r) {
                       walk(r.from, fn);
                       walk(r.to, fn);
                       walk(r.roughness, fn);
                   },
                   [&](FilterSel& f) {
                       walk(f.percent, fn);
                       walk(*f.inner, fn);
                   },
                   [&](UnionSel& u) {
                       for (auto& p : u.parts) walk(p, fn);
                   },
                   [&](VarAccess& v) { walk(v, fn); },
               },
               s.node);
}

void walk(EntitySpec& e, const SpanFn& fn)
{
    if (e.cls) walk(*e.cls, fn);
    if (e.name) walk(*e.name, fn);
}

void walk(Command& c, const SpanFn& fn)
{
    fn(c.span);
    std::visit(overloaded{
                   [&](MapBlock&) {},
                   [&](Geometry&) {},
                   [&](Region&) {},
                   [&](Terrain& t) {
                       walk(t.target, fn);
                       walk(t.terrain, fn);
                   },
                   [&](ReplaceTerrain& r) {
                       walk(r.from, fn);
                       walk(r.to, fn);
                       walk(r.percent, fn);
                   },
                   [&](Mazewalk& m) { walk(m.entry, fn); },
                   [&](RandomCorridors&) {},
                   [&](Room& r) { walk(r.body, fn); },
                   [&](Subroom& r) { walk(r.body, fn); },
                   [&](RoomDoor&) {},
                   [&](Door& d) { walk(d.place, fn); },
                   [&](Monster& m) {
                       walk(m.spec, fn);
                       walk(m.place, fn);
                   },
                   [&](Object& o) {
                       walk(o.spec, fn);
                       walk(o.place, fn);
                       if (o.montype) walk(*o.montype, fn);
                   },
                   [&](Trap& t) {
                       if (t.name) walk(*t.name, fn);
                       walk(t.place, fn);
                   },
                   [&](Stair& s) { walk(s.place, fn); },
                   [&](Sink& s) { walk(s.place, fn); },
                   [&](Fountain& f) { walk(f.place, fn); },
                   [&](Altar& a) { walk(a.place, fn); },
                   [&](Branch&) {},
                   [&](Loop& l) {
                       walk(l.count, fn);
                       walk(l.body, fn);
                   },
                   [&](If& f) {
                       fn(f.condition.span);
                       if (auto* p = std::get_if<PercentCond>(&f.condition.node)) walk(p->percent, fn);
                       if (auto* cc = std::get_if<CompareCond>(&f.condition.node)) {
                           walk(cc->lhs, fn);
                           walk(cc->rhs, fn);
                       }
                       walk(f.then_body, fn);
                       if (f.else_body) walk(*f.else_body, fn);
                   },
                   [&](VarAssign& a) {
                       std::visit(overloaded{
                                      [&](IntExpr& e) { walk(e, fn); },
                                      [&](SelectionValue& s) { walk(s.selection, fn); },
                                      [&](CoordValue& cv) { walk(cv.coord, fn); },
                                      [&](auto&) {},
                                  },
                                  a.value);
                   },
                   [&](Shuffle&) {},
                   [&](ProbStatement& p) {
                       walk(p.percent, fn);
                       walk(*p.inner, fn);
                   },
               },
               c.node);
}

void walk(CommandList& list, const SpanFn& fn)
{
    for (auto& c : list) walk(c, fn);
}

}  // namespace

void for_each_span(const DesDocument& doc, const std::function<void(const SourceSpan&)>& fn)
{
    auto& mutable_doc = const_cast<DesDocument&>(doc);
    const SpanFn adapter = [&](SourceSpan& s) { fn(s); };
    for (auto& level : mutable_doc.levels) {
        fn(level.span);
        walk(level.commands, adapter);
    }
}

void clear_spans(DesDocument& doc)
{
    const SpanFn reset = [](SourceSpan& s) { s = SourceSpan{}; };
    for (auto& level : doc.levels) {
        reset(level.span);
        walk(level.commands, reset);
    }
}

}  // namespace hackbox::dsl
