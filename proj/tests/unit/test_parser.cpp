#include <doctest.h>

#include <sstream>

#include "hackbox/dsl/parser.hpp"
#include "test_util.hpp"

using namespace hackbox::dsl;
using hackbox::testing::read_fixture;

namespace {

const char* const kCorpus[] = {"river.des", "simple_maze.des", "cloud_room.des", "oracle.des", "random_rooms.des"};

template <typename T>
const T& as(const Command& c)
{
    REQUIRE(std::holds_alternative<T>(c.node));
    return std::get<T>(c.node);
}

std::vector<std::string> source_lines(const std::string& src)
{
    std::vector<std::string> lines;
    std::istringstream in(src);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

}  // namespace

TEST_CASE("river sample parses into five top-level statements")
{
    const auto doc = parse_document(read_fixture("river.des"));
    REQUIRE(doc.levels.size() == 1);
    const auto& level = doc.levels[0];
    CHECK(level.name() == kImplicitLevelName);
    CHECK(std::holds_alternative<MazeType>(level.kind));
    REQUIRE(level.commands.size() == 5);

    const auto& assign = as<VarAssign>(level.commands[0]);
    CHECK(assign.name == "river");
    const auto& arr = std::get<ArrayLit>(assign.value);
    CHECK(arr.tag == "TERRAIN");
    CHECK(arr.elements.size() == 3);

    CHECK(as<Shuffle>(level.commands[1]).name == "river");

    const auto& loop = as<Loop>(level.commands[2]);
    CHECK(std::get<IntLiteral>(loop.count.node).value == 2);
    REQUIRE(loop.body.size() == 2);
    const auto& terrain = as<Terrain>(loop.body[0]);
    const auto& rl = std::get<RandLineSel>(terrain.target.node);
    CHECK(std::get<AbsoluteCoord>(rl.to.node) == AbsoluteCoord{10, 10});
    CHECK(std::get<IntLiteral>(rl.roughness.node).value == 5);
    const auto& river = std::get<VarAccess>(terrain.terrain);
    CHECK(river.name == "river");
    REQUIRE(river.index.has_value());
    CHECK(as<Monster>(loop.body[1]).spec.random);

    const auto& rt = as<ReplaceTerrain>(level.commands[3]);
    CHECK(std::get<IntLiteral>(rt.percent.node).value == 5);
    CHECK(std::get<CharLit>(rt.to).value == 'T');

    const auto& stair = as<Stair>(level.commands[4]);
    CHECK(stair.direction == StairDir::Down);
    CHECK(std::holds_alternative<RandomCoord>(stair.place.node));
}

TEST_CASE("simple maze sample parses into geometry, map, loop, probability and monster")
{
    const auto doc = parse_document(read_fixture("simple_maze.des"));
    REQUIRE(doc.levels.size() == 1);
    const auto& level = doc.levels[0];
    const auto& maze = std::get<MazeType>(level.kind);
    CHECK(maze.name == "simple_maze");
    CHECK(maze.fill == ' ');
    REQUIRE(level.commands.size() == 5);
    const auto& geo = as<Geometry>(level.commands[0]);
    CHECK(geo.halign == "center");
    const auto& map = as<MapBlock>(level.commands[1]);
    REQUIRE(map.rows.size() == 9);
    CHECK(map.rows[0] == "  --- --- ---  ");
    CHECK(map.rows[3] == "|.......+.+...|");
    const auto& loop = as<Loop>(level.commands[2]);
    REQUIRE(loop.body.size() == 2);
    CHECK(std::get<CharLit>(*as<Object>(loop.body[0]).spec.cls).value == '%');
    CHECK_FALSE(as<Trap>(loop.body[1]).name.has_value());
    const auto& prob = as<ProbStatement>(level.commands[3]);
    CHECK(std::get<IntLiteral>(prob.percent.node).value == 10);
    const auto& gold = as<Object>(*prob.inner);
    CHECK(std::get<StrLit>(*gold.spec.name).value == "gold piece");
    CHECK(gold.quantity == 100);
    const auto& bat = as<Monster>(level.commands[4]);
    CHECK(std::get<StrLit>(*bat.spec.name).value == "bat");
    CHECK(std::get<AbsoluteCoord>(bat.place.node) == AbsoluteCoord{3, 3});
}

TEST_CASE("cloud room sample: selections, rndcoord and typed arrays")
{
    const auto doc = parse_document(read_fixture("cloud_room.des"));
    const auto& cmds = doc.levels[0].commands;
    REQUIRE(cmds.size() == 17);
    const auto& center = as<VarAssign>(cmds[7]);
    const auto& sel = std::get<SelectionValue>(center.value);
    CHECK(std::get<FillRectSel>(sel.selection.node).rect == RectLit{5, 5, 8, 8});
    const auto& apple_loc = std::get<CoordValue>(as<VarAssign>(cmds[8]).value);
    CHECK(std::holds_alternative<RndCoord>(apple_loc.coord.node));
    const auto& monsters = std::get<ArrayLit>(as<VarAssign>(cmds[10]).value);
    CHECK(monsters.tag == "monster");
    CHECK(monsters.elements.size() == 6);
    const auto& places = std::get<ArrayLit>(as<VarAssign>(cmds[12]).value);
    CHECK(std::get<CoordLit>(places.elements[0]) == CoordLit{10, 8});
    const auto& mon = as<Monster>(cmds[14]);
    CHECK(mon.args == std::vector<std::string>{"hostile"});
    CHECK(std::holds_alternative<VarAccess>(*mon.spec.cls));
    const auto& branch = as<Branch>(cmds[16]);
    CHECK(branch.first == RectLit{0, 0, 0, 0});
}

TEST_CASE("oracle sample nests a subroom inside a room")
{
    const auto doc = parse_document(read_fixture("oracle.des"));
    const auto& level = doc.levels[0];
    CHECK(std::holds_alternative<RoomType>(level.kind));
    CHECK(level.name() == "oracle");
    REQUIRE(level.commands.size() == 1);
    const auto& room = as<Room>(level.commands[0]);
    CHECK(room.lighting == Lighting::Lit);
    CHECK(room.pos == CoordLit{3, 3});
    CHECK(room.size == CoordLit{11, 9});
    REQUIRE(room.body.size() == 11);
    const auto& statue = as<Object>(room.body[0]);
    CHECK(std::get<CharLit>(*statue.montype).value == 'C');
    const auto& sub = as<Subroom>(room.body[8]);
    CHECK(sub.type == "delphi");
    CHECK(sub.pos == CoordLit{4, 3});
    REQUIRE(sub.body.size() == 6);
    const auto& door = as<RoomDoor>(sub.body[5]);
    CHECK_FALSE(door.secret);
    CHECK(door.state == "nodoor");
    CHECK_FALSE(door.pos.has_value());
}

TEST_CASE("five random rooms become an implicit ROOM-type level")
{
    const auto doc = parse_document(read_fixture("random_rooms.des"));
    const auto& level = doc.levels[0];
    CHECK(std::holds_alternative<RoomType>(level.kind));
    REQUIRE(level.commands.size() == 6);
    for (int i = 0; i < 5; ++i) {
        const auto& r = as<Room>(level.commands[static_cast<std::size_t>(i)]);
        CHECK_FALSE(r.pos.has_value());
        CHECK_FALSE(r.size.has_value());
    }
    CHECK(std::holds_alternative<RandomCorridors>(level.commands[5].node));
}

TEST_CASE("minimal map blocks")
{
    auto doc = parse_document("MAZE:\"m\",' '\nMAP\n..\nENDMAP\n");
    CHECK(as<MapBlock>(doc.levels[0].commands[0]).rows == std::vector<std::string>{".."});
    doc = parse_document("MAZE:\"m\",' '\nMAP\n..\n..\nENDMAP");
    CHECK(as<MapBlock>(doc.levels[0].commands[0]).rows.size() == 2);
}

TEST_CASE("IF forms and arithmetic precedence")
{
    const auto doc = parse_document(
        "$roll = 2d6\nIF[$roll < 7] {\n  MONSTER: random, random\n}\nIF[50%] {\nMONSTER:'F',(1,1)\n} ELSE {\n"
        "OBJECT:'%',random\n}\n$mon_index = 1d4 - 1\n$x = 1 + 2 * 3\n");
    const auto& cmds = doc.levels[0].commands;
    REQUIRE(cmds.size() == 5);
    const auto& cmp = std::get<CompareCond>(as<If>(cmds[1]).condition.node);
    CHECK(cmp.op == CompareOp::Lt);
    const auto& pct = as<If>(cmds[2]);
    CHECK(std::holds_alternative<PercentCond>(pct.condition.node));
    REQUIRE(pct.else_body.has_value());
    const auto& idx = std::get<IntExpr>(as<VarAssign>(cmds[3]).value);
    const auto& sub = std::get<Arith>(idx.node);
    CHECK(sub.op == ArithOp::Sub);
    CHECK(std::holds_alternative<DiceRoll>(sub.lhs->node));
    const auto& sum = std::get<Arith>(std::get<IntExpr>(as<VarAssign>(cmds[4]).value).node);
    CHECK(sum.op == ArithOp::Add);
    CHECK(std::get<Arith>(sum.rhs->node).op == ArithOp::Mul);
}

TEST_CASE("parse errors report position, expectation and offending token")
{
    try {
        parse_document(read_fixture("bad.des"));
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.span().line == 5);
        CHECK(e.expected() == "')'");
    }
    CHECK_THROWS_AS(parse_document("MAZE:\"m\",' '\nMAP\n...\n"), UnterminatedMap);
    CHECK_THROWS_AS(parse_document("ENGRAVING:(1,1),\"x\""), UnknownCommand);
    CHECK_THROWS_AS(parse_document(""), ParseError);
    CHECK_THROWS_AS(parse_document("LOOP [2] {\nSINK:(1,1)\n"), ParseError);
    CHECK_THROWS_AS(parse_document("REGION:(5,5,1,1),lit,\"ordinary\""), ParseError);
    CHECK_THROWS_AS(parse_document("$x = 0d6"), ParseError);
    CHECK_THROWS_AS(parse_document("MAZE:\"a\",' '\nSINK:(1,1)\nMAZE:\"a\",' '\nSINK:(1,1)"), ParseError);
    CHECK_THROWS_AS(parse_document("MAP\n.\nENDMAP\nMAP\n.\nENDMAP"), ParseError);
    CHECK_THROWS_AS(parse_document("SINK:(1,1) SINK:(2,2)"), ParseError);
    CHECK_THROWS_AS(parse_document("$a = { 'a', \"b\" }"), ParseError);
}

TEST_CASE("round trip: print then parse gives the same tree for the corpus")
{
    for (const char* name : kCorpus) {
        CAPTURE(name);
        auto doc = parse_document(read_fixture(name));
        const std::string printed = print_document(doc);
        auto again = parse_document(printed);
        clear_spans(doc);
        clear_spans(again);
        CHECK(doc == again);
        CHECK(print_document(again) == printed);
    }
}

TEST_CASE("every span lies inside the source text")
{
    for (const char* name : kCorpus) {
        CAPTURE(name);
        const std::string src = read_fixture(name);
        const auto lines = source_lines(src);
        int visited = 0;
        for_each_span(parse_document(src), [&](const SourceSpan& s) {
            ++visited;
            REQUIRE(s.line >= 1);
            REQUIRE(s.column >= 1);
            REQUIRE(s.length >= 1);
            REQUIRE(static_cast<std::size_t>(s.line) <= lines.size());
            CHECK(static_cast<std::size_t>(s.column + s.length - 1) <= lines[static_cast<std::size_t>(s.line - 1)].size());
        });
        CHECK(visited > 0);
    }
}

TEST_CASE("parsing is deterministic")
{
    for (const char* name : kCorpus) {
        const std::string src = read_fixture(name);
        CHECK(parse_document(src) == parse_document(src));
    }
}
