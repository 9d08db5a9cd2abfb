#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hackbox {

struct Dice {
    int count = 1;
    int sides = 1;

    friend bool operator==(const Dice&, const Dice&) = default;
};

std::string to_string(const Dice& d);

enum class ObjectCategory : std::uint8_t {
    Comestible,
    Weapon,
    Armor,
    Boots,
    Ring,
    Amulet,
    Potion,
    Wand,
    Scroll,
    Tool,
    Key,
    Rock,
    Coin,
};

std::string_view category_name(ObjectCategory c);

enum class ItemEffect : std::uint8_t { None, Levitation, Death, Cold, Heal, Unlock };

struct MonsterKind {
    std::string name;
    char cls = '?';
    Dice hit_dice;
    Dice damage;
    int speed = 12;
    std::uint8_t color = 7;
    bool hostile = true;
    bool instakill = false;
    bool ranged = false;
    bool unique = false;
};

struct ObjectKind {
    std::string name;
    char cls = '?';
    ObjectCategory category = ObjectCategory::Tool;
    ItemEffect effect = ItemEffect::None;
    std::uint8_t color = 7;
    std::optional<Dice> damage;
    bool random_ok = true;
};

class CatalogError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Monster and object tables loaded from the shipped TSV files.
class Catalog {
public:
    /// Parse both tables. Throws CatalogError on malformed input.
    static Catalog parse(std::string_view monsters_tsv, std::string_view objects_tsv);

    /// Tables compiled into the binary from data/*.tsv.
    static const Catalog& builtin();

    [[nodiscard]] const std::vector<MonsterKind>& monsters() const { return monsters_; }
    [[nodiscard]] const std::vector<ObjectKind>& objects() const { return objects_; }

    [[nodiscard]] std::optional<std::size_t> find_monster(std::string_view name) const;

    /// Exact name, or the "<kind> of <name>" shorthand ("death" -> "wand of death").
    /// When cls is given the match is restricted to that class.
    [[nodiscard]] std::optional<std::size_t> find_object(std::string_view name, std::optional<char> cls = {}) const;

    [[nodiscard]] std::vector<std::size_t> monsters_of_class(char cls) const;
    [[nodiscard]] std::vector<std::size_t> objects_of_class(char cls) const;
    [[nodiscard]] std::vector<std::size_t> random_monsters() const;
    [[nodiscard]] std::vector<std::size_t> random_objects() const;

private:
    std::vector<MonsterKind> monsters_;
    std::vector<ObjectKind> objects_;
};

/// Parse "NdM". Returns nullopt when malformed.
std::optional<Dice> parse_dice(std::string_view text);

}  // namespace hackbox
