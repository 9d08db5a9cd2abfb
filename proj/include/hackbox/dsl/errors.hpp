#pragma once

#include <stdexcept>
#include <string>

#include "hackbox/dsl/ast.hpp"

namespace hackbox::dsl {

std::string format_location(const SourceSpan& span);

/// Base of every error raised while reading or evaluating des source.
class DslError : public std::runtime_error {
public:
    DslError(SourceSpan span, const std::string& what) : std::runtime_error(format_location(span) + ": " + what), span_(span) {}
    [[nodiscard]] const SourceSpan& span() const { return span_; }

private:
    SourceSpan span_;
};

class IllegalCharacter : public DslError {
public:
    IllegalCharacter(SourceSpan span, char c);
};

class ParseError : public DslError {
public:
    ParseError(SourceSpan span, std::string expected, std::string found);
    [[nodiscard]] const std::string& expected() const { return expected_; }
    [[nodiscard]] const std::string& found() const { return found_; }

private:
    std::string expected_;
    std::string found_;
};

class UnterminatedMap : public ParseError {
public:
    explicit UnterminatedMap(SourceSpan span) : ParseError(span, "ENDMAP", "end of input") {}
};

class UnknownCommand : public ParseError {
public:
    UnknownCommand(SourceSpan span, const std::string& name) : ParseError(span, "a command", "'" + name + "'") {}
};

}  // namespace hackbox::dsl
