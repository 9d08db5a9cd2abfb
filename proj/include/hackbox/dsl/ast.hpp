#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hackbox/dsl/box.hpp"

namespace hackbox::dsl {

struct SourceSpan {
    int line = 1;
    int column = 1;
    int length = 1;

    friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

// ---------------------------------------------------------------------------
// Expressions
// ---------------------------------------------------------------------------

struct IntExpr;

/// `$name` or `$name[index]`.
struct VarAccess {
    std::string name;
    std::optional<Box<IntExpr>> index;

    friend bool operator==(const VarAccess&, const VarAccess&) = default;
};

struct IntLiteral {
    int value = 0;
    friend bool operator==(const IntLiteral&, const IntLiteral&) = default;
};

struct DiceRoll {
    int count = 1;
    int sides = 1;
    friend bool operator==(const DiceRoll&, const DiceRoll&) = default;
};

enum class ArithOp { Add, Sub, Mul, Div };

struct Arith {
    ArithOp op = ArithOp::Add;
    Box<IntExpr> lhs;
    Box<IntExpr> rhs;
    friend bool operator==(const Arith&, const Arith&) = default;
};

struct IntExpr {
    std::variant<IntLiteral, DiceRoll, VarAccess, Arith> node;
    SourceSpan span;
    friend bool operator==(const IntExpr&, const IntExpr&) = default;
};

struct CharLit {
    char value = '.';
    friend bool operator==(const CharLit&, const CharLit&) = default;
};

struct StrLit {
    std::string value;
    friend bool operator==(const StrLit&, const StrLit&) = default;
};

/// A scalar that is either a literal or read from a variable.
using Atom = std::variant<CharLit, StrLit, VarAccess>;

struct SelectionExpr;

struct AbsoluteCoord {
    int x = 0;
    int y = 0;
    friend bool operator==(const AbsoluteCoord&, const AbsoluteCoord&) = default;
};
struct RandomCoord {
    friend bool operator==(const RandomCoord&, const RandomCoord&) = default;
};
struct RndCoord {
    Box<SelectionExpr> selection;
    friend bool operator==(const RndCoord&, const RndCoord&) = default;
};

struct CoordExpr {
    std::variant<AbsoluteCoord, RandomCoord, RndCoord, VarAccess> node;
    SourceSpan span;
    friend bool operator==(const CoordExpr&, const CoordExpr&) = default;
};

struct RectLit {
    int x1 = 0;
    int y1 = 0;
    int x2 = 0;
    int y2 = 0;
    friend bool operator==(const RectLit&, const RectLit&) = default;
};

struct PointSel {
    CoordExpr at;
    friend bool operator==(const PointSel&, const PointSel&) = default;
};
struct FillRectSel {
    RectLit rect;
    friend bool operator==(const FillRectSel&, const FillRectSel&) = default;
};
/// Outline of a rectangle.
struct RectSel {
    RectLit rect;
    friend bool operator==(const RectSel&, const RectSel&) = default;
};
struct LineSel {
    CoordExpr from;
    CoordExpr to;
    friend bool operator==(const LineSel&, const LineSel&) = default;
};
struct RandLineSel {
    CoordExpr from;
    CoordExpr to;
    IntExpr roughness;
    friend bool operator==(const RandLineSel&, const RandLineSel&) = default;
};
struct FilterSel {
    IntExpr percent;
    Box<SelectionExpr> inner;
    friend bool operator==(const FilterSel&, const FilterSel&) = default;
};
struct UnionSel {
    std::vector<SelectionExpr> parts;
    friend bool operator==(const UnionSel&, const UnionSel&) = default;
};

struct SelectionExpr {
    std::variant<PointSel, FillRectSel, RectSel, LineSel, RandLineSel, FilterSel, UnionSel, VarAccess> node;
    SourceSpan span;
    friend bool operator==(const SelectionExpr&, const SelectionExpr&) = default;
};

enum class CompareOp { Lt, Le, Gt, Ge, Eq, Ne };

struct PercentCond {
    IntExpr percent;
    friend bool operator==(const PercentCond&, const PercentCond&) = default;
};
struct CompareCond {
    CompareOp op = CompareOp::Lt;
    IntExpr lhs;
    IntExpr rhs;
    friend bool operator==(const CompareCond&, const CompareCond&) = default;
};

struct CondExpr {
    std::variant<PercentCond, CompareCond> node;
    SourceSpan span;
    friend bool operator==(const CondExpr&, const CondExpr&) = default;
};

struct CoordLit {
    int x = 0;
    int y = 0;
    friend bool operator==(const CoordLit&, const CoordLit&) = default;
};

using ArrayElement = std::variant<CharLit, StrLit, CoordLit>;

/// `{ a, b, c }`, optionally tagged (`TERRAIN:{...}`, `monster:{...}`, `object:{...}`).
struct ArrayLit {
    std::string tag;
    std::vector<ArrayElement> elements;
    friend bool operator==(const ArrayLit&, const ArrayLit&) = default;
};

struct SelectionValue {
    SelectionExpr selection;
    friend bool operator==(const SelectionValue&, const SelectionValue&) = default;
};

struct CoordValue {
    CoordExpr coord;
    friend bool operator==(const CoordValue&, const CoordValue&) = default;
};

using ValueExpr = std::variant<IntExpr, CharLit, StrLit, ArrayLit, SelectionValue, CoordValue>;

/// Monster / object specification: `random`, `'c'`, `"name"`, `('c', "name")` or a variable.
struct EntitySpec {
    bool random = false;
    std::optional<Atom> cls;
    std::optional<Atom> name;
    friend bool operator==(const EntitySpec&, const EntitySpec&) = default;
};

enum class Lighting { Lit, Unlit, Random };

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

struct Command;
using CommandList = std::vector<Command>;

struct MapBlock {
    std::vector<std::string> rows;
    friend bool operator==(const MapBlock&, const MapBlock&) = default;
};
struct Geometry {
    std::string halign = "center";
    std::string valign = "center";
    friend bool operator==(const Geometry&, const Geometry&) = default;
};
struct Region {
    RectLit rect;
    Lighting lighting = Lighting::Lit;
    std::string type = "ordinary";
    friend bool operator==(const Region&, const Region&) = default;
};
struct Terrain {
    SelectionExpr target;
    Atom terrain;
    friend bool operator==(const Terrain&, const Terrain&) = default;
};
struct ReplaceTerrain {
    RectLit rect;
    Atom from;
    Atom to;
    IntExpr percent;
    friend bool operator==(const ReplaceTerrain&, const ReplaceTerrain&) = default;
};
struct Mazewalk {
    CoordExpr entry;
    std::string direction = "east";
    friend bool operator==(const Mazewalk&, const Mazewalk&) = default;
};
struct RandomCorridors {
    friend bool operator==(const RandomCorridors&, const RandomCorridors&) = default;
};
struct Room {
    std::string type = "ordinary";
    Lighting lighting = Lighting::Random;
    std::optional<CoordLit> pos;
    std::optional<std::pair<std::string, std::string>> align;
    std::optional<CoordLit> size;
    CommandList body;
    friend bool operator==(const Room&, const Room&) = default;
};
struct Subroom {
    std::string type = "ordinary";
    Lighting lighting = Lighting::Random;
    CoordLit pos;
    CoordLit size;
    CommandList body;
    friend bool operator==(const Subroom&, const Subroom&) = default;
};
struct RoomDoor {
    bool secret = false;
    std::string state = "random";
    std::string wall = "random";
    std::optional<int> pos;
    friend bool operator==(const RoomDoor&, const RoomDoor&) = default;
};
struct Door {
    std::string state = "closed";
    CoordExpr place;
    friend bool operator==(const Door&, const Door&) = default;
};
struct Monster {
    EntitySpec spec;
    CoordExpr place;
    std::vector<std::string> args;
    friend bool operator==(const Monster&, const Monster&) = default;
};
struct Object {
    EntitySpec spec;
    CoordExpr place;
    std::optional<Atom> montype;
    std::optional<int> quantity;
    friend bool operator==(const Object&, const Object&) = default;
};
struct Trap {
    std::optional<Atom> name;  // nullopt = random
    CoordExpr place;
    friend bool operator==(const Trap&, const Trap&) = default;
};
enum class StairDir { Up, Down };
struct Stair {
    CoordExpr place;
    StairDir direction = StairDir::Down;
    friend bool operator==(const Stair&, const Stair&) = default;
};
struct Sink {
    CoordExpr place;
    friend bool operator==(const Sink&, const Sink&) = default;
};
struct Fountain {
    CoordExpr place;
    friend bool operator==(const Fountain&, const Fountain&) = default;
};
struct Altar {
    CoordExpr place;
    std::string align = "random";
    std::string type = "altar";
    friend bool operator==(const Altar&, const Altar&) = default;
};
struct Branch {
    RectLit first;
    RectLit second;
    friend bool operator==(const Branch&, const Branch&) = default;
};
struct Loop {
    IntExpr count;
    CommandList body;
    friend bool operator==(const Loop&, const Loop&) = default;
};
struct If {
    CondExpr condition;
    CommandList then_body;
    std::optional<CommandList> else_body;
    friend bool operator==(const If&, const If&) = default;
};
struct VarAssign {
    std::string name;
    ValueExpr value;
    friend bool operator==(const VarAssign&, const VarAssign&) = default;
};
struct Shuffle {
    std::string name;
    friend bool operator==(const Shuffle&, const Shuffle&) = default;
};
/// `[P%] command` runs the inner command with probability P/100.
struct ProbStatement {
    IntExpr percent;
    Box<Command> inner;
    friend bool operator==(const ProbStatement&, const ProbStatement&) = default;
};

using CommandNode = std::variant<MapBlock, Geometry, Region, Terrain, ReplaceTerrain, Mazewalk, RandomCorridors, Room,
                                 Subroom, RoomDoor, Door, Monster, Object, Trap, Stair, Sink, Fountain, Altar, Branch,
                                 Loop, If, VarAssign, Shuffle, ProbStatement>;

struct Command {
    CommandNode node;
    SourceSpan span;
    friend bool operator==(const Command&, const Command&) = default;
};

struct MazeType {
    std::string name;
    char fill = ' ';
    friend bool operator==(const MazeType&, const MazeType&) = default;
};
struct RoomType {
    std::string name;
    friend bool operator==(const RoomType&, const RoomType&) = default;
};

struct LevelDecl {
    std::variant<MazeType, RoomType> kind;
    CommandList commands;
    SourceSpan span;

    [[nodiscard]] const std::string& name() const
    {
        return std::visit([](const auto& k) -> const std::string& { return k.name; }, kind);
    }
    friend bool operator==(const LevelDecl&, const LevelDecl&) = default;
};

struct DesDocument {
    std::vector<LevelDecl> levels;

    [[nodiscard]] const LevelDecl* find(std::string_view name) const
    {
        for (const auto& l : levels)
            if (l.name() == name) return &l;
        return nullptr;
    }
    friend bool operator==(const DesDocument&, const DesDocument&) = default;
};

/// Name given to a level whose source has no MAZE/LEVEL header.
inline constexpr const char* kImplicitLevelName = "main";

}  // namespace hackbox::dsl
