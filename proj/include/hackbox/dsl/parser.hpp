#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "hackbox/dsl/ast.hpp"
#include "hackbox/dsl/errors.hpp"

namespace hackbox::dsl {

/// Parse a des program. Throws IllegalCharacter, ParseError, UnterminatedMap
/// or UnknownCommand.
DesDocument parse_document(std::string_view source);

/// Canonical source text; parse_document(print_document(d)) equals d up to spans.
std::string print_document(const DesDocument& doc);
std::string print_command(const Command& cmd, int indent = 0);

void for_each_span(const DesDocument& doc, const std::function<void(const SourceSpan&)>& fn);
void clear_spans(DesDocument& doc);

/// True when the command list (searched through nested bodies) has a ROOM.
bool contains_rooms(const CommandList& commands);
int count_map_blocks(const CommandList& commands);

}  // namespace hackbox::dsl
