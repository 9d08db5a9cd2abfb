#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "hackbox/dsl/parser.hpp"
#include "hackbox/gen/compiler.hpp"
#include "hackbox/sim/observation.hpp"
#include "test_util.hpp"

using namespace hackbox;
using namespace hackbox::sim;
using hackbox::testing::blueprint;
using hackbox::testing::monster;
using hackbox::testing::object;
using hackbox::testing::trap;

namespace {

const std::set<std::string> kAll(kObservationKeys.begin(), kObservationKeys.end());

std::string message_text(const Observation& o)
{
    return std::string(reinterpret_cast<const char*>(o.message->data()));
}

}  // namespace

TEST_CASE("full grids and crops have the documented shapes")
{
    const WorldState s = reset(blueprint({"@...", "...."}), 0);
    const Observation o = observe(s, kAll);
    CHECK(o.chars->width() == 79);
    CHECK(o.chars->height() == 21);
    CHECK(o.ids->width() == 79);
    CHECK(o.chars_crop->width() == 9);
    CHECK(o.chars_crop->height() == 9);
    CHECK(o.stats->size() == 25);
    CHECK(o.message->size() == 256);
    CHECK(o.inv_letters->size() == 55);
    CHECK(o.inv_strs->size() == 55);
    CHECK(o.screen_descriptions->width() == 79);

    // Agent in the top-left corner: the crop's top and left are padding.
    const auto& crop = *o.chars_crop;
    CHECK(crop.at(4, 4) == '@');
    for (int i = 0; i < 9; ++i) {
        CHECK(crop.at(i, 0) == ' ');
        CHECK(crop.at(0, i) == ' ');
        CHECK(o.ids_crop->at(i, 3) == 0);
    }
    CHECK(crop.at(5, 4) == '.');
    CHECK(o.colors_crop->at(4, 4) == 15);
    CHECK((*o.stats)[kStatX] == 0);
    CHECK((*o.stats)[kStatHp] == 16);

    const Observation c3 = observe(s, {"chars_crop"}, 3);
    CHECK(c3.chars_crop->width() == 3);
    CHECK_FALSE(c3.chars.has_value());
    CHECK_THROWS_AS(observe(s, {"chars_crop"}, 4), std::invalid_argument);
    CHECK_THROWS_AS(observe(s, {"pixels"}), UnknownKey);
}

TEST_CASE("cell descriptions")
{
    const WorldState s = reset(blueprint({"@.....", "......"}, {monster("killer bee", {2, 0}, true),
                                                                 monster("green dragon", {4, 0}, true),
                                                                 object("boulder", {1, 1}), object("apple", {3, 1}),
                                                                 trap("teleport", {5, 1})}),
                               0);
    CHECK(describe_cell(s, 0, 0) == "agent");
    CHECK(describe_cell(s, 2, 0) == "killer bee");
    CHECK(describe_cell(s, 4, 0) == "green dragon");
    CHECK(describe_cell(s, 1, 1) == "a boulder");
    CHECK(describe_cell(s, 3, 1) == "an apple");
    CHECK(describe_cell(s, 5, 1) == "teleportation trap");
    CHECK(describe_cell(s, 1, 0) == "floor");
    CHECK(describe_cell(s, 30, 10) == "");
    CHECK_THROWS_AS(describe_cell(s, 79, 0), std::out_of_range);
    const Observation o = observe(s, {"screen_descriptions"});
    CHECK(o.screen_descriptions->at(2, 0) == "killer bee");
}

TEST_CASE("remembered cells show terrain only")
{
    WorldState s = reset(blueprint({"@.........", ".........."}, {object("apple", {3, 1})}, false), 0);
    CHECK(glyph_at(s, {3, 1}).ch == ' ');
    for (int i = 0; i < 3; ++i) step(s, Action::move(Dir::E));
    CHECK(glyph_at(s, {3, 1}).ch == '%');
    for (int i = 0; i < 3; ++i) step(s, Action::move(Dir::E));
    CHECK(glyph_at(s, {3, 1}).ch == '.');
    CHECK(glyph_at(s, {3, 1}).id == terrain_id(TerrainKind::Floor));
    CHECK(describe_cell(s, 3, 1) == "floor");
}

TEST_CASE("messages and inventory views")
{
    WorldState s = reset(blueprint({"@.."}, {object("dagger", {0, 0}), object("apple", {0, 0})}), 0);
    step(s, Action::simple(ActionKind::PickUp));
    step(s, Action::simple(ActionKind::PickUp));
    step(s, Action::simple(ActionKind::Wield));
    step(s, Action::select('b'));
    const Observation o = observe(s, kAll);
    CHECK(message_text(o) == "b - a dagger (weapon in hand).");
    CHECK((*o.inv_letters)[0] == 'a');
    CHECK((*o.inv_letters)[1] == 'b');
    CHECK((*o.inv_letters)[2] == 0);
    CHECK((*o.inv_strs)[0] == "an apple");
    CHECK((*o.inv_strs)[1] == "a dagger (weapon in hand)");
    CHECK((*o.stats)[kStatInventory] == 2);
    CHECK((*o.stats)[kStatClock] == 3);

    s.message = std::string(400, 'x');
    const Observation m = observe(s, {"message"});
    CHECK((*m.message)[254] == 'x');
    CHECK((*m.message)[255] == 0);
}

TEST_CASE("grids, crops and stats stay consistent over random play")
{
    const auto doc = dsl::parse_document(testing::read_fixture("random_rooms.des"));
    const auto actions = skill_actions();
    Rng pick(3);
    int states = 0;
    for (std::uint64_t seed = 0; states < 1000; ++seed) {
        WorldState s = reset(gen::compile(doc, seed), seed);
        for (int t = 0; t < 100 && !s.done && states < 1000; ++t, ++states) {
            step(s, actions[pick.index(actions.size())]);
            const int n = 2 * pick.range(0, 6) + 1;
            const Observation o = observe(s, kAll, n);
            for (int y = 0; y < 21; ++y)
                for (int x = 0; x < 79; ++x)
                    REQUIRE((o.ids->at(x, y) != 0) == (o.chars->at(x, y) != ' '));
            const int half = n / 2;
            for (int dy = 0; dy < n; ++dy)
                for (int dx = 0; dx < n; ++dx) {
                    const Coord c{s.agent.pos.x - half + dx, s.agent.pos.y - half + dy};
                    if (!in_canvas(c)) {
                        REQUIRE(o.chars_crop->at(dx, dy) == ' ');
                        continue;
                    }
                    REQUIRE(o.chars_crop->at(dx, dy) == (*o.chars)[c]);
                    REQUIRE(o.colors_crop->at(dx, dy) == (*o.colors)[c]);
                    REQUIRE(o.ids_crop->at(dx, dy) == (*o.ids)[c]);
                }
            REQUIRE((*o.stats)[kStatX] == s.agent.pos.x);
            REQUIRE((*o.stats)[kStatY] == s.agent.pos.y);
            REQUIRE(o.chars_crop->at(half, half) == '@');
        }
    }
}

TEST_CASE("ANSI rendering mirrors the grids")
{
    WorldState s = reset(blueprint({"-----", "|@.>|", "|.L.|", "-----"}), 0);
    step(s, Action::move(Dir::N));
    const std::string text = render_ansi(s);
    std::vector<std::string> lines;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) lines.push_back(l);
    REQUIRE(lines.size() == 23);
    CHECK(lines[0] == s.message);
    CHECK(lines[22].rfind("HP:16(16) T:0", 0) == 0);
    const Observation o = observe(s, {"chars", "colors"});
    for (int y = 0; y < 21; ++y) {
        // Walk the escapes, tracking the colour in force for each glyph.
        const std::string& l = lines[static_cast<std::size_t>(y + 1)];
        int color = -1;
        int x = 0;
        for (std::size_t i = 0; i < l.size();) {
            if (l[i] == '\x1b') {
                const auto m = l.find('m', i);
                const std::string code = l.substr(i + 2, m - i - 2);
                if (code != "0") color = (code[0] == '1' ? 8 : 0) + (code.back() - '0');
                i = m + 1;
                continue;
            }
            REQUIRE(x < 79);
            CHECK(static_cast<unsigned char>(l[i]) == o.chars->at(x, y));
            CHECK(color == o.colors->at(x, y));
            ++x;
            ++i;
        }
        CHECK(x == 79);
    }
}

TEST_CASE("id table matches the shipped ids.tsv")
{
    const Catalog& cat = Catalog::builtin();
    CHECK(terrain_id(TerrainKind::Solid) == 2);
    CHECK(monster_id(cat, 0) == 2 + kTerrainKindCount);
    CHECK(max_id(cat) == 2 + kTerrainKindCount + cat.monsters().size() + cat.objects().size() + 2);
    CHECK(ids_tsv(cat) == testing::read_fixture("../../data/ids.tsv"));
}
