#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hackbox/dsl/ast.hpp"

namespace hackbox::dsl {

enum class TokenKind {
    Ident,
    Var,
    String,
    Char,
    Int,
    Dice,
    Percent,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
    Colon,
    Assign,
    Lt,
    Le,
    Gt,
    Ge,
    EqEq,
    NotEq,
    Plus,
    Minus,
    Star,
    Slash,
    Pipe,
    Newline,
    MapRow,
};

std::string_view token_kind_name(TokenKind kind);

struct Token {
    TokenKind kind = TokenKind::Newline;
    /// Identifier/variable name, string or char contents, or the raw map row.
    std::string text;
    /// Int and Percent value, or the dice count.
    int value = 0;
    /// Dice sides.
    int sides = 0;
    SourceSpan span;

    [[nodiscard]] std::string describe() const;
    friend bool operator==(const Token&, const Token&) = default;
};

/// Split des source into tokens. Comments are dropped, runs of blank lines
/// collapse to one Newline, and rows between MAP and ENDMAP come out as
/// MapRow tokens. Throws IllegalCharacter.
std::vector<Token> tokenize(std::string_view source);

}  // namespace hackbox::dsl
