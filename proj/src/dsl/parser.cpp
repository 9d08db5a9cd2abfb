#include "hackbox/dsl/parser.hpp"

#include <set>

#include "hackbox/dsl/lexer.hpp"

namespace hackbox::dsl {

namespace {

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    DesDocument document()
    {
        DesDocument doc;
        std::vector<bool> has_header;
        skip_newlines();
        while (!at_end()) {
            if ((at_ident("MAZE") || at_ident("LEVEL")) && peek(1).kind == TokenKind::Colon) {
                doc.levels.push_back(header());
                has_header.push_back(true);
            } else {
                if (doc.levels.empty()) {
                    LevelDecl implicit;
                    implicit.kind = MazeType{kImplicitLevelName, '.'};
                    implicit.span = peek().span;
                    doc.levels.push_back(std::move(implicit));
                    has_header.push_back(false);
                }
                doc.levels.back().commands.push_back(command());
            }
            end_of_statement();
            skip_newlines();
        }
        if (doc.levels.empty()) throw ParseError({1, 1, 1}, "a level", "empty input");

        std::set<std::string> names;
        for (std::size_t i = 0; i < doc.levels.size(); ++i) {
            auto& level = doc.levels[i];
            const bool rooms = contains_rooms(level.commands);
            const int maps = count_map_blocks(level.commands);
            if (auto* room = std::get_if<RoomType>(&level.kind); room && !rooms) {
                level.kind = MazeType{room->name, ' '};
            } else if (auto* maze = std::get_if<MazeType>(&level.kind); maze && rooms) {
                if (has_header[i]) throw ParseError(level.span, "a LEVEL header for a level with ROOMs", "MAZE");
                level.kind = RoomType{maze->name};
            }
            if (rooms && maps > 0) throw ParseError(level.span, "no MAP block in a ROOM level", "MAP");
            if (maps > 1) throw ParseError(level.span, "at most one MAP block per level", std::to_string(maps));
            if (!names.insert(level.name()).second)
                throw ParseError(level.span, "a unique level name", "\"" + level.name() + "\"");
        }
        return doc;
    }

private:
    // ---- token helpers ----------------------------------------------------

    [[nodiscard]] bool at_end() const { return pos_ >= tokens_.size(); }

    [[nodiscard]] const Token& peek(std::size_t ahead = 0) const
    {
        static const Token eof{TokenKind::Newline, "", 0, 0, {1, 1, 1}};
        return pos_ + ahead < tokens_.size() ? tokens_[pos_ + ahead] : eof;
    }

    [[nodiscard]] bool at(TokenKind k) const { return !at_end() && peek().kind == k; }
    [[nodiscard]] bool at_ident(std::string_view name) const { return at(TokenKind::Ident) && peek().text == name; }

    [[nodiscard]] SourceSpan here() const
    {
        if (!at_end()) return peek().span;
        if (tokens_.empty()) return {1, 1, 1};
        const auto& s = tokens_.back().span;
        return {s.line, s.column + s.length - 1, 1};
    }

    [[nodiscard]] std::string found() const { return at_end() ? "end of input" : peek().describe(); }

    [[noreturn]] void fail(const std::string& expected) const { throw ParseError(here(), expected, found()); }

    const Token& advance() { return tokens_[pos_++]; }

    const Token& expect(TokenKind k)
    {
        if (!at(k)) fail(std::string(token_kind_name(k)));
        return advance();
    }

    const Token& expect(TokenKind k, const std::string& what)
    {
        if (!at(k)) fail(what);
        return advance();
    }

    void expect_ident(std::string_view name)
    {
        if (!at_ident(name)) fail("'" + std::string(name) + "'");
        advance();
    }

    std::string ident(const std::string& what) { return expect(TokenKind::Ident, what).text; }

    bool accept(TokenKind k)
    {
        if (!at(k)) return false;
        ++pos_;
        return true;
    }

    void skip_newlines()
    {
        while (at(TokenKind::Newline)) ++pos_;
    }

    void end_of_statement()
    {
        if (at_end() || at(TokenKind::RBrace)) return;
        expect(TokenKind::Newline, "end of line");
    }

    /// Span from token `start` through the last consumed token when they share a line.
    [[nodiscard]] SourceSpan span_from(std::size_t start) const
    {
        const auto& a = tokens_[start].span;
        if (pos_ == 0 || pos_ - 1 < start) return a;
        const auto& b = tokens_[pos_ - 1].span;
        if (b.line != a.line) return a;
        return {a.line, a.column, b.column + b.length - a.column};
    }

    // ---- level headers ----------------------------------------------------

    LevelDecl header()
    {
        const std::size_t start = pos_;
        const std::string keyword = advance().text;
        expect(TokenKind::Colon);
        LevelDecl level;
        const std::string name = expect(TokenKind::String, "level name").text;
        if (keyword == "MAZE") {
            char fill = ' ';
            if (accept(TokenKind::Comma)) fill = expect(TokenKind::Char, "fill character").text.front();
            level.kind = MazeType{name, fill};
        } else {
            level.kind = RoomType{name};
        }
        level.span = span_from(start);
        return level;
    }

    // ---- commands ---------------------------------------------------------

    Command command()
    {
        const std::size_t start = pos_;
        Command cmd;
        if (at(TokenKind::LBracket)) {
            advance();
            ProbStatement p;
            const auto& pct = expect(TokenKind::Percent, "percentage");
            p.percent = IntExpr{IntLiteral{pct.value}, pct.span};
            expect(TokenKind::RBracket);
            p.inner = command();
            cmd.node = std::move(p);
        } else if (at(TokenKind::Var)) {
            VarAssign a;
            a.name = advance().text;
            expect(TokenKind::Assign);
            a.value = value();
            cmd.node = std::move(a);
        } else if (at(TokenKind::Ident)) {
            cmd.node = keyword_command();
        } else {
            fail("a command");
        }
        cmd.span = span_from(start);
        return cmd;
    }

    CommandNode keyword_command()
    {
        const Token& kw = advance();
        const std::string& name = kw.text;
        if (name == "MAP") return map_block(kw);
        if (name == "RANDOM_CORRIDORS") return RandomCorridors{};
        if (name == "LOOP") {
            Loop l;
            expect(TokenKind::LBracket);
            l.count = int_expr();
            expect(TokenKind::RBracket);
            l.body = body();
            return l;
        }
        if (name == "IF") {
            If f;
            f.condition = condition();
            f.then_body = body();
            if (at_ident("ELSE") || (at(TokenKind::Newline) && peek(1).kind == TokenKind::Ident && peek(1).text == "ELSE")) {
                skip_newlines();
                advance();
                f.else_body = body();
            }
            return f;
        }
        static const std::set<std::string, std::less<>> kColonCommands{
            "GEOMETRY", "REGION", "TERRAIN", "REPLACE_TERRAIN", "MAZEWALK", "ROOM", "SUBROOM", "ROOMDOOR", "DOOR",
            "MONSTER", "OBJECT", "TRAP", "STAIR", "SINK", "FOUNTAIN", "ALTAR", "BRANCH", "SHUFFLE"};
        if (!kColonCommands.contains(name)) throw UnknownCommand(kw.span, name);
        expect(TokenKind::Colon);

        if (name == "GEOMETRY") {
            Geometry g;
            g.halign = ident("horizontal alignment");
            expect(TokenKind::Comma);
            g.valign = ident("vertical alignment");
            return g;
        }
        if (name == "REGION") {
            Region r;
            r.rect = rect_lit();
            expect(TokenKind::Comma);
            r.lighting = lighting();
            expect(TokenKind::Comma);
            r.type = expect(TokenKind::String, "region type").text;
            return r;
        }
        if (name == "TERRAIN") {
            Terrain t;
            t.target = selection();
            expect(TokenKind::Comma);
            t.terrain = atom();
            return t;
        }
        if (name == "REPLACE_TERRAIN") {
            ReplaceTerrain r;
            r.rect = rect_lit();
            expect(TokenKind::Comma);
            r.from = atom();
            expect(TokenKind::Comma);
            r.to = atom();
            expect(TokenKind::Comma);
            const auto& pct = expect(TokenKind::Percent, "percentage");
            if (pct.value > 100) throw ParseError(pct.span, "percentage in 0..100", pct.text);
            r.percent = IntExpr{IntLiteral{pct.value}, pct.span};
            return r;
        }
        if (name == "MAZEWALK") {
            Mazewalk m;
            m.entry = coord();
            if (accept(TokenKind::Comma)) m.direction = ident("direction");
            return m;
        }
        if (name == "ROOM") {
            Room r;
            r.type = expect(TokenKind::String, "room type").text;
            expect(TokenKind::Comma);
            r.lighting = lighting();
            expect(TokenKind::Comma);
            r.pos = optional_coord_lit();
            expect(TokenKind::Comma);
            if (!accept_random()) {
                expect(TokenKind::LParen);
                std::string h = ident("horizontal alignment");
                expect(TokenKind::Comma);
                std::string v = ident("vertical alignment");
                expect(TokenKind::RParen);
                r.align = std::make_pair(std::move(h), std::move(v));
            }
            expect(TokenKind::Comma);
            r.size = optional_coord_lit();
            r.body = body();
            return r;
        }
        if (name == "SUBROOM") {
            Subroom r;
            r.type = expect(TokenKind::String, "room type").text;
            expect(TokenKind::Comma);
            r.lighting = lighting();
            expect(TokenKind::Comma);
            r.pos = coord_lit();
            expect(TokenKind::Comma);
            r.size = coord_lit();
            r.body = body();
            return r;
        }
        if (name == "ROOMDOOR") {
            RoomDoor d;
            const std::string secret = ident("true or false");
            if (secret != "true" && secret != "false") throw ParseError(tokens_[pos_ - 1].span, "true or false", secret);
            d.secret = secret == "true";
            expect(TokenKind::Comma);
            d.state = ident("door state");
            expect(TokenKind::Comma);
            d.wall = ident("wall");
            expect(TokenKind::Comma);
            if (!accept_random()) d.pos = expect(TokenKind::Int, "door position").value;
            return d;
        }
        if (name == "DOOR") {
            Door d;
            d.state = ident("door state");
            expect(TokenKind::Comma);
            d.place = coord();
            return d;
        }
        if (name == "MONSTER") {
            Monster m;
            m.spec = entity_spec();
            expect(TokenKind::Comma);
            m.place = coord();
            while (accept(TokenKind::Comma)) {
                if (at(TokenKind::String)) m.args.push_back(advance().text);
                else m.args.push_back(ident("monster argument"));
            }
            return m;
        }
        if (name == "OBJECT") {
            Object o;
            o.spec = entity_spec();
            expect(TokenKind::Comma);
            o.place = coord();
            while (accept(TokenKind::Comma)) {
                if (at_ident("montype")) {
                    advance();
                    expect(TokenKind::Colon);
                    o.montype = atom();
                } else {
                    o.quantity = expect(TokenKind::Int, "montype or quantity").value;
                }
            }
            return o;
        }
        if (name == "TRAP") {
            Trap t;
            if (!accept_random()) t.name = atom();
            expect(TokenKind::Comma);
            t.place = coord();
            return t;
        }
        if (name == "STAIR") {
            Stair s;
            s.place = coord();
            expect(TokenKind::Comma);
            const std::string d = ident("up or down");
            if (d == "up") s.direction = StairDir::Up;
            else if (d == "down") s.direction = StairDir::Down;
            else throw ParseError(tokens_[pos_ - 1].span, "up or down", "'" + d + "'");
            return s;
        }
        if (name == "SINK") return Sink{coord()};
        if (name == "FOUNTAIN") return Fountain{coord()};
        if (name == "ALTAR") {
            Altar a;
            a.place = coord();
            if (accept(TokenKind::Comma)) {
                a.align = ident("alignment");
                expect(TokenKind::Comma);
                a.type = ident("altar type");
            }
            return a;
        }
        if (name == "BRANCH") {
            Branch b;
            b.first = rect_lit();
            expect(TokenKind::Comma);
            b.second = rect_lit();
            return b;
        }
        // SHUFFLE
        return Shuffle{expect(TokenKind::Var, "variable").text};
    }

    MapBlock map_block(const Token& kw)
    {
        MapBlock m;
        if (at_end()) throw UnterminatedMap(kw.span);
        expect(TokenKind::Newline, "end of line");
        while (true) {
            if (at_end()) throw UnterminatedMap(kw.span);
            if (at_ident("ENDMAP")) {
                advance();
                break;
            }
            m.rows.push_back(expect(TokenKind::MapRow, "map row").text);
            if (at_end()) throw UnterminatedMap(kw.span);
            expect(TokenKind::Newline, "end of line");
        }
        if (m.rows.empty()) throw ParseError(kw.span, "at least one map row", "ENDMAP");
        return m;
    }

    CommandList body()
    {
        skip_newlines();
        expect(TokenKind::LBrace);
        CommandList out;
        skip_newlines();
        while (!at(TokenKind::RBrace)) {
            if (at_end()) fail("'}'");
            out.push_back(command());
            end_of_statement();
            skip_newlines();
        }
        advance();
        return out;
    }

    // ---- small literals ---------------------------------------------------

    bool accept_random()
    {
        if (!at_ident("random")) return false;
        advance();
        return true;
    }

    Lighting lighting()
    {
        const std::string l = ident("lit, unlit or random");
        if (l == "lit") return Lighting::Lit;
        if (l == "unlit") return Lighting::Unlit;
        if (l == "random") return Lighting::Random;
        throw ParseError(tokens_[pos_ - 1].span, "lit, unlit or random", "'" + l + "'");
    }

    int signed_int()
    {
        const bool neg = accept(TokenKind::Minus);
        const int v = expect(TokenKind::Int, "integer").value;
        return neg ? -v : v;
    }

    RectLit rect_lit()
    {
        const std::size_t start = pos_;
        expect(TokenKind::LParen, "'(' opening a rectangle");
        RectLit r;
        r.x1 = signed_int();
        expect(TokenKind::Comma);
        r.y1 = signed_int();
        expect(TokenKind::Comma);
        r.x2 = signed_int();
        expect(TokenKind::Comma);
        r.y2 = signed_int();
        expect(TokenKind::RParen);
        if (r.x1 > r.x2 || r.y1 > r.y2) throw ParseError(span_from(start), "x1<=x2 and y1<=y2", "inverted rectangle");
        return r;
    }

    CoordLit coord_lit()
    {
        expect(TokenKind::LParen, "'(' opening a coordinate");
        CoordLit c;
        c.x = signed_int();
        expect(TokenKind::Comma);
        c.y = signed_int();
        expect(TokenKind::RParen);
        return c;
    }

    std::optional<CoordLit> optional_coord_lit()
    {
        if (accept_random()) return std::nullopt;
        return coord_lit();
    }

    VarAccess var_access()
    {
        VarAccess v;
        v.name = expect(TokenKind::Var, "variable").text;
        if (accept(TokenKind::LBracket)) {
            v.index = int_expr();
            expect(TokenKind::RBracket);
        }
        return v;
    }

    Atom atom()
    {
        if (at(TokenKind::Char)) return CharLit{advance().text.front()};
        if (at(TokenKind::String)) return StrLit{advance().text};
        if (at(TokenKind::Var)) return var_access();
        fail("character, string or variable");
    }

    EntitySpec entity_spec()
    {
        EntitySpec s;
        if (accept_random()) {
            s.random = true;
        } else if (accept(TokenKind::LParen)) {
            s.cls = atom();
            expect(TokenKind::Comma);
            s.name = atom();
            expect(TokenKind::RParen);
        } else if (at(TokenKind::String)) {
            s.name = atom();
        } else {
            s.cls = atom();
        }
        return s;
    }

    // ---- expressions ------------------------------------------------------

    IntExpr int_expr()
    {
        const std::size_t start = pos_;
        IntExpr lhs = term();
        while (at(TokenKind::Plus) || at(TokenKind::Minus)) {
            const ArithOp op = advance().kind == TokenKind::Plus ? ArithOp::Add : ArithOp::Sub;
            IntExpr rhs = term();
            IntExpr e{Arith{op, std::move(lhs), std::move(rhs)}, {}};
            e.span = span_from(start);
            lhs = std::move(e);
        }
        return lhs;
    }

    IntExpr term()
    {
        const std::size_t start = pos_;
        IntExpr lhs = unary();
        while (at(TokenKind::Star) || at(TokenKind::Slash)) {
            const ArithOp op = advance().kind == TokenKind::Star ? ArithOp::Mul : ArithOp::Div;
            IntExpr rhs = unary();
            IntExpr e{Arith{op, std::move(lhs), std::move(rhs)}, {}};
            e.span = span_from(start);
            lhs = std::move(e);
        }
        return lhs;
    }

    IntExpr unary()
    {
        const std::size_t start = pos_;
        if (accept(TokenKind::Minus)) {
            if (at(TokenKind::Int)) {
                const int v = advance().value;
                return IntExpr{IntLiteral{-v}, span_from(start)};
            }
            IntExpr inner = unary();
            return IntExpr{Arith{ArithOp::Sub, IntExpr{IntLiteral{0}, tokens_[start].span}, std::move(inner)},
                           span_from(start)};
        }
        if (at(TokenKind::Int)) return IntExpr{IntLiteral{advance().value}, span_from(start)};
        if (at(TokenKind::Dice)) {
            const Token& d = advance();
            if (d.value < 1 || d.sides < 1) throw ParseError(d.span, "dice with at least one die of at least one side", d.text);
            return IntExpr{DiceRoll{d.value, d.sides}, d.span};
        }
        if (at(TokenKind::Var)) {
            VarAccess v = var_access();
            return IntExpr{std::move(v), span_from(start)};
        }
        if (accept(TokenKind::LParen)) {
            IntExpr inner = int_expr();
            expect(TokenKind::RParen);
            return inner;
        }
        fail("integer expression");
    }

    CondExpr condition()
    {
        const std::size_t start = pos_;
        expect(TokenKind::LBracket);
        CondExpr c;
        if (at(TokenKind::Percent) && peek(1).kind == TokenKind::RBracket) {
            const Token& p = advance();
            if (p.value > 100) throw ParseError(p.span, "percentage in 0..100", p.text);
            c.node = PercentCond{IntExpr{IntLiteral{p.value}, p.span}};
        } else {
            CompareCond cc;
            cc.lhs = int_expr();
            switch (peek().kind) {
            case TokenKind::Lt: cc.op = CompareOp::Lt; break;
            case TokenKind::Le: cc.op = CompareOp::Le; break;
            case TokenKind::Gt: cc.op = CompareOp::Gt; break;
            case TokenKind::Ge: cc.op = CompareOp::Ge; break;
            case TokenKind::EqEq: cc.op = CompareOp::Eq; break;
            case TokenKind::NotEq: cc.op = CompareOp::Ne; break;
            default: fail("comparison operator");
            }
            advance();
            cc.rhs = int_expr();
            c.node = std::move(cc);
        }
        expect(TokenKind::RBracket);
        c.span = span_from(start);
        return c;
    }

    CoordExpr coord()
    {
        const std::size_t start = pos_;
        CoordExpr c;
        if (accept_random()) {
            c.node = RandomCoord{};
        } else if (at_ident("rndcoord")) {
            advance();
            c.node = RndCoord{selection()};
        } else if (at(TokenKind::Var)) {
            c.node = var_access();
        } else if (at(TokenKind::LParen)) {
            advance();
            AbsoluteCoord a;
            a.x = expect(TokenKind::Int, "non-negative x").value;
            expect(TokenKind::Comma);
            a.y = expect(TokenKind::Int, "non-negative y").value;
            expect(TokenKind::RParen);
            c.node = a;
        } else {
            fail("coordinate");
        }
        c.span = span_from(start);
        return c;
    }

    SelectionExpr selection()
    {
        const std::size_t start = pos_;
        SelectionExpr first = selection_primary();
        if (!at(TokenKind::Pipe)) return first;
        UnionSel u;
        u.parts.push_back(std::move(first));
        while (accept(TokenKind::Pipe)) u.parts.push_back(selection_primary());
        return SelectionExpr{std::move(u), span_from(start)};
    }

    SelectionExpr selection_primary()
    {
        const std::size_t start = pos_;
        SelectionExpr s;
        if (at_ident("fillrect")) {
            advance();
            s.node = FillRectSel{rect_lit()};
        } else if (at_ident("rect")) {
            advance();
            s.node = RectSel{rect_lit()};
        } else if (at_ident("line")) {
            advance();
            LineSel l;
            l.from = coord();
            expect(TokenKind::Comma);
            l.to = coord();
            s.node = std::move(l);
        } else if (at_ident("randline")) {
            advance();
            RandLineSel r;
            r.from = coord();
            expect(TokenKind::Comma);
            r.to = coord();
            expect(TokenKind::Comma);
            r.roughness = int_expr();
            s.node = std::move(r);
        } else if (at_ident("filter")) {
            advance();
            expect(TokenKind::LParen);
            const auto& p = expect(TokenKind::Percent, "percentage");
            expect(TokenKind::Comma);
            FilterSel f{IntExpr{IntLiteral{p.value}, p.span}, selection()};
            expect(TokenKind::RParen);
            s.node = std::move(f);
        } else if (at(TokenKind::Var)) {
            s.node = var_access();
        } else {
            s.node = PointSel{coord()};
        }
        s.span = span_from(start);
        return s;
    }

    ValueExpr value()
    {
        const std::size_t start = pos_;
        if (at(TokenKind::Ident) && peek(1).kind == TokenKind::Colon) {
            const std::string tag = advance().text;
            advance();
            if (tag == "selection") return SelectionValue{selection()};
            if (!at(TokenKind::LBrace)) fail("'{' opening an array");
            return array(tag);
        }
        if (at(TokenKind::LBrace)) return array("");
        if (at(TokenKind::Char)) return CharLit{advance().text.front()};
        if (at(TokenKind::String)) return StrLit{advance().text};
        if (at_ident("rndcoord") || at_ident("random") ||
            (at(TokenKind::LParen) && peek(1).kind == TokenKind::Int && peek(2).kind == TokenKind::Comma))
            return CoordValue{coord()};
        (void)start;
        return int_expr();
    }

    ArrayLit array(std::string tag)
    {
        const std::size_t start = pos_;
        expect(TokenKind::LBrace);
        ArrayLit a;
        a.tag = std::move(tag);
        do {
            if (at(TokenKind::Char)) a.elements.emplace_back(CharLit{advance().text.front()});
            else if (at(TokenKind::String)) a.elements.emplace_back(StrLit{advance().text});
            else if (at(TokenKind::LParen)) a.elements.emplace_back(coord_lit());
            else fail("array element");
            if (a.elements.back().index() != a.elements.front().index())
                throw ParseError(tokens_[pos_ - 1].span, "elements of one type", "mixed array");
        } while (accept(TokenKind::Comma));
        expect(TokenKind::RBrace);
        (void)start;
        return a;
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

template <typename Fn>
void walk_commands(const CommandList& list, Fn&& fn);

template <typename Fn>
void walk_command(const Command& cmd, Fn&& fn)
{
    fn(cmd);
    std::visit(
        [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Room> || std::is_same_v<T, Subroom> || std::is_same_v<T, Loop>) {
                walk_commands(node.body, fn);
            } else if constexpr (std::is_same_v<T, If>) {
                walk_commands(node.then_body, fn);
                if (node.else_body) walk_commands(*node.else_body, fn);
            } else if constexpr (std::is_same_v<T, ProbStatement>) {
                walk_command(*node.inner, fn);
            }
        },
        cmd.node);
}

template <typename Fn>
void walk_commands(const CommandList& list, Fn&& fn)
{
    for (const auto& cmd : list) walk_command(cmd, fn);
}

}  // namespace

DesDocument parse_document(std::string_view source) { return Parser(tokenize(source)).document(); }

bool contains_rooms(const CommandList& commands)
{
    bool found = false;
    walk_commands(commands, [&](const Command& c) { found = found || std::holds_alternative<Room>(c.node); });
    return found;
}

int count_map_blocks(const CommandList& commands)
{
    int n = 0;
    walk_commands(commands, [&](const Command& c) { n += std::holds_alternative<MapBlock>(c.node) ? 1 : 0; });
    return n;
}

}  // namespace hackbox::dsl
