#include "hackbox/dsl/lexer.hpp"

#include <array>
#include <cctype>
#include <charconv>

#include "hackbox/dsl/errors.hpp"

namespace hackbox::dsl {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

class Lexer {
public:
    explicit Lexer(std::string_view source) : source_(source) {}

    std::vector<Token> run()
    {
        std::size_t start = 0;
        int lineno = 0;
        while (start <= source_.size()) {
            auto end = source_.find('\n', start);
            const bool last = end == std::string_view::npos;
            if (last) end = source_.size();
            std::string_view line = source_.substr(start, end - start);
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            ++lineno;
            if (in_map_) map_line(line, lineno);
            else code_line(line, lineno);
            if (last) break;
            start = end + 1;
        }
        return std::move(tokens_);
    }

private:
    void begin_line_token(int lineno)
    {
        if (!tokens_.empty() && tokens_.back().kind != TokenKind::Newline && tokens_.back().span.line != lineno) {
            Token nl;
            nl.kind = TokenKind::Newline;
            nl.span = {last_token_line_, last_line_length_ + 1, 1};
            tokens_.push_back(std::move(nl));
        }
    }

    void push(Token tok)
    {
        begin_line_token(tok.span.line);
        last_token_line_ = tok.span.line;
        tokens_.push_back(std::move(tok));
    }

    void map_line(std::string_view line, int lineno)
    {
        line_length_ = static_cast<int>(line.size());
        if (trim(line) == "ENDMAP") {
            const auto col = static_cast<int>(line.find('E')) + 1;
            push(Token{TokenKind::Ident, "ENDMAP", 0, 0, {lineno, col, 6}});
            in_map_ = false;
        } else {
            push(Token{TokenKind::MapRow, std::string(line), 0, 0, {lineno, 1, std::max(1, line_length_)}});
        }
        last_line_length_ = line_length_;
    }

    void code_line(std::string_view line, int lineno)
    {
        line_length_ = static_cast<int>(line.size());
        const std::size_t before = tokens_.size();
        std::size_t i = 0;
        while (i < line.size()) {
            const char c = line[i];
            const int col = static_cast<int>(i) + 1;
            if (c == ' ' || c == '\t' || c == '\r') {
                ++i;
                continue;
            }
            if (c == '#') break;
            if (is_ident_start(c)) {
                std::size_t j = i + 1;
                while (j < line.size()) {
                    if (is_ident_char(line[j])) ++j;
                    else if (line[j] == '-' && j + 1 < line.size() && std::isalpha(static_cast<unsigned char>(line[j + 1])) &&
                             std::isalpha(static_cast<unsigned char>(line[j - 1])))
                        ++j;
                    else break;
                }
                push(Token{TokenKind::Ident, std::string(line.substr(i, j - i)), 0, 0, {lineno, col, static_cast<int>(j - i)}});
                i = j;
                continue;
            }
            if (c == '$') {
                std::size_t j = i + 1;
                if (j >= line.size() || !is_ident_start(line[j])) throw IllegalCharacter({lineno, col, 1}, c);
                while (j < line.size() && is_ident_char(line[j])) ++j;
                push(Token{TokenKind::Var, std::string(line.substr(i + 1, j - i - 1)), 0, 0,
                           {lineno, col, static_cast<int>(j - i)}});
                i = j;
                continue;
            }
            if (is_digit(c)) {
                i = number(line, i, lineno);
                continue;
            }
            if (c == '"') {
                const auto close = line.find('"', i + 1);
                if (close == std::string_view::npos)
                    throw ParseError({lineno, col, line_length_ - col + 1}, "closing '\"'", "end of line");
                push(Token{TokenKind::String, std::string(line.substr(i + 1, close - i - 1)), 0, 0,
                           {lineno, col, static_cast<int>(close - i + 1)}});
                i = close + 1;
                continue;
            }
            if (c == '\'') {
                if (i + 2 < line.size() && line[i + 2] == '\'') {
                    push(Token{TokenKind::Char, std::string(1, line[i + 1]), 0, 0, {lineno, col, 3}});
                    i += 3;
                    continue;
                }
                const auto close = line.find('\'', i + 1);
                if (close == std::string_view::npos || close == i + 1)
                    throw ParseError({lineno, col, 1}, "character literal", "unterminated quote");
                push(Token{TokenKind::String, std::string(line.substr(i + 1, close - i - 1)), 0, 0,
                           {lineno, col, static_cast<int>(close - i + 1)}});
                i = close + 1;
                continue;
            }
            const char n = i + 1 < line.size() ? line[i + 1] : '\0';
            auto simple = [&](TokenKind k, int len) {
                push(Token{k, std::string(line.substr(i, static_cast<std::size_t>(len))), 0, 0, {lineno, col, len}});
                i += static_cast<std::size_t>(len);
            };
            switch (c) {
            case '(': simple(TokenKind::LParen, 1); break;
            case ')': simple(TokenKind::RParen, 1); break;
            case '[': simple(TokenKind::LBracket, 1); break;
            case ']': simple(TokenKind::RBracket, 1); break;
            case '{': simple(TokenKind::LBrace, 1); break;
            case '}': simple(TokenKind::RBrace, 1); break;
            case ',': simple(TokenKind::Comma, 1); break;
            case ':': simple(TokenKind::Colon, 1); break;
            case '+': simple(TokenKind::Plus, 1); break;
            case '-': simple(TokenKind::Minus, 1); break;
            case '*': simple(TokenKind::Star, 1); break;
            case '/': simple(TokenKind::Slash, 1); break;
            case '|': simple(TokenKind::Pipe, 1); break;
            case '=': n == '=' ? simple(TokenKind::EqEq, 2) : simple(TokenKind::Assign, 1); break;
            case '<': n == '=' ? simple(TokenKind::Le, 2) : simple(TokenKind::Lt, 1); break;
            case '>': n == '=' ? simple(TokenKind::Ge, 2) : simple(TokenKind::Gt, 1); break;
            case '!':
                if (n != '=') throw IllegalCharacter({lineno, col, 1}, c);
                simple(TokenKind::NotEq, 2);
                break;
            default: throw IllegalCharacter({lineno, col, 1}, c);
            }
        }
        if (tokens_.size() > before) last_line_length_ = line_length_;
        const std::size_t n = tokens_.size();
        const bool map_start = n > before && tokens_.back().kind == TokenKind::Ident && tokens_.back().text == "MAP" &&
                               (n == 1 || tokens_[n - 2].span.line != lineno);
        if (map_start) in_map_ = true;
    }

    std::size_t number(std::string_view line, std::size_t i, int lineno)
    {
        const int col = static_cast<int>(i) + 1;
        auto read_int = [&](std::size_t from, std::size_t& to) {
            to = from;
            while (to < line.size() && is_digit(line[to])) ++to;
            int v = 0;
            const auto [ptr, ec] = std::from_chars(line.data() + from, line.data() + to, v);
            if (ec != std::errc{})
                throw ParseError({lineno, col, static_cast<int>(to - i)}, "integer", std::string(line.substr(i, to - i)));
            (void)ptr;
            return v;
        };
        std::size_t j = 0;
        const int v = read_int(i, j);
        if (j + 1 < line.size() && line[j] == 'd' && is_digit(line[j + 1])) {
            std::size_t k = 0;
            const int sides = read_int(j + 1, k);
            push(Token{TokenKind::Dice, std::string(line.substr(i, k - i)), v, sides, {lineno, col, static_cast<int>(k - i)}});
            return k;
        }
        if (j < line.size() && line[j] == '%') {
            push(Token{TokenKind::Percent, std::string(line.substr(i, j + 1 - i)), v, 0,
                       {lineno, col, static_cast<int>(j + 1 - i)}});
            return j + 1;
        }
        if (j < line.size() && is_ident_char(line[j])) throw IllegalCharacter({lineno, static_cast<int>(j) + 1, 1}, line[j]);
        push(Token{TokenKind::Int, std::string(line.substr(i, j - i)), v, 0, {lineno, col, static_cast<int>(j - i)}});
        return j;
    }

    std::string_view source_;
    std::vector<Token> tokens_;
    bool in_map_ = false;
    int line_length_ = 0;
    int last_line_length_ = 0;
    int last_token_line_ = 1;
};

constexpr std::array<std::string_view, 29> kKindNames{
    "identifier", "variable", "string", "character", "integer", "dice", "percentage", "'('", "')'", "'['",
    "']'", "'{'", "'}'", "','", "':'", "'='", "'<'", "'<='", "'>'", "'>='",
    "'=='", "'!='", "'+'", "'-'", "'*'", "'/'", "'|'", "end of line", "map row",
};

}  // namespace

std::string format_location(const SourceSpan& span)
{
    return "line " + std::to_string(span.line) + ", column " + std::to_string(span.column);
}

IllegalCharacter::IllegalCharacter(SourceSpan span, char c)
    : DslError(span, std::isprint(static_cast<unsigned char>(c)) != 0
                         ? std::string("illegal character '") + c + "'"
                         : "illegal byte " + std::to_string(static_cast<unsigned char>(c)))
{
}

ParseError::ParseError(SourceSpan span, std::string expected, std::string found)
    : DslError(span, "expected " + expected + ", found " + found), expected_(std::move(expected)), found_(std::move(found))
{
}

std::string_view token_kind_name(TokenKind kind) { return kKindNames[static_cast<std::size_t>(kind)]; }

std::string Token::describe() const
{
    switch (kind) {
    case TokenKind::Ident: return "'" + text + "'";
    case TokenKind::Var: return "$" + text;
    case TokenKind::String: return "\"" + text + "\"";
    case TokenKind::Char: return "'" + text + "'";
    case TokenKind::Int:
    case TokenKind::Dice:
    case TokenKind::Percent: return text;
    default: return std::string(token_kind_name(kind));
    }
}

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

}  // namespace hackbox::dsl
