#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "hackbox/blueprint.hpp"
#include "hackbox/catalog.hpp"
#include "hackbox/dsl/ast.hpp"
#include "hackbox/gen/procgen.hpp"
#include "hackbox/rng.hpp"

namespace hackbox::gen {

class CompileError : public std::runtime_error {
public:
    CompileError(dsl::SourceSpan span, std::string reason);
    [[nodiscard]] const dsl::SourceSpan& span() const { return span_; }
    [[nodiscard]] const std::string& reason() const { return reason_; }

private:
    dsl::SourceSpan span_;
    std::string reason_;
};

class UnboundVariable : public CompileError {
public:
    UnboundVariable(dsl::SourceSpan span, const std::string& name) : CompileError(span, "unbound variable $" + name) {}
};

class UnknownEntity : public CompileError {
public:
    UnknownEntity(dsl::SourceSpan span, const std::string& what) : CompileError(span, "unknown " + what) {}
};

/// A selection held in a variable.
struct CellSet {
    Selection cells;
    friend bool operator==(const CellSet&, const CellSet&) = default;
};

/// Coordinates and selections are stored relative to the frame they were made in.
struct Value {
    using Data = std::variant<int, char, std::string, Coord, CellSet, std::vector<char>, std::vector<std::string>,
                              std::vector<Coord>>;
    Data data;
    std::string tag;

    friend bool operator==(const Value&, const Value&) = default;
};

struct EvalContext {
    std::map<std::string, Value, std::less<>> variables;
    Rng rng;
};

/// Sum of n rolls of an m-sided die.
int roll_dice(int n, int m, Rng& rng);

int eval_int(const dsl::IntExpr& expr, EvalContext& ctx);
bool eval_condition(const dsl::CondExpr& cond, EvalContext& ctx);

/// Compile the named level. Deterministic in (doc, level_name, seed).
LevelBlueprint compile(const dsl::DesDocument& doc, std::string_view level_name, std::uint64_t seed,
                       const Catalog& catalog = Catalog::builtin());

/// Compile the first level of the document.
LevelBlueprint compile(const dsl::DesDocument& doc, std::uint64_t seed, const Catalog& catalog = Catalog::builtin());

inline constexpr int kLayoutRetries = 100;

}  // namespace hackbox::gen
