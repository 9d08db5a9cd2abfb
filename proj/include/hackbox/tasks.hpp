#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hackbox/blueprint.hpp"
#include "hackbox/gen/validate.hpp"
#include "hackbox/reward.hpp"
#include "hackbox/sim/action.hpp"
#include "hackbox/sim/observation.hpp"
#include "hackbox/sim/world.hpp"

namespace hackbox::tasks {

class UnknownTask : public std::invalid_argument {
public:
    explicit UnknownTask(const std::string& id) : std::invalid_argument("unknown task: " + id) {}
};

class GenerationFailed : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A named task: level distribution, reward, action set, observation and limits.
struct EnvSpec {
    std::string id;
    /// Seed to des program.
    std::function<std::string(std::uint64_t)> des_source;
    reward::RewardConfig reward;
    std::vector<sim::Action> actions;
    std::vector<std::string> obs_keys;
    int crop = sim::kDefaultCrop;
    int max_steps = 200;
    sim::EngineConfig engine;
    /// Items the agent starts with.
    std::vector<std::string> inventory;
    /// When set, sampled levels must pass validation or are resampled.
    std::optional<gen::Requirements> requirements;
};

struct Overrides {
    std::optional<std::string> des;
    std::optional<reward::RewardConfig> reward;
    std::optional<int> max_steps;
    std::optional<std::vector<std::string>> obs_keys;
    std::optional<int> crop;
};

/// Registered ids in registration order.
const std::vector<std::string>& list_tasks();

EnvSpec make_task(std::string_view id, const Overrides& overrides = {});

/// Ad-hoc task around a fixed des program: skill actions, prompts on, reach the stairs.
EnvSpec des_task(std::string id, std::string des_text);

inline constexpr int kMaxResamples = 64;

/// Compile a level for the seed. Fills in a start cell when the program left it
/// open, then validates against spec.requirements, resampling deterministically.
LevelBlueprint sample_level(const EnvSpec& spec, std::uint64_t seed);

// ---- MultiRoom ----------------------------------------------------------

struct MultiRoomVariant {
    bool monster = false;
    bool locked = false;
    bool lava = false;

    static MultiRoomVariant extreme() { return {true, true, true}; }
};

/// Linear chain of rooms joined by doors, start in the first and stairs in the last.
std::string gen_multiroom(int n_rooms, int room_size, MultiRoomVariant variant, std::uint64_t seed);

// ---- Boxoban ------------------------------------------------------------

class MalformedLevel : public std::invalid_argument {
public:
    MalformedLevel(int index, const std::string& reason)
        : std::invalid_argument("boxoban level " + std::to_string(index) + ": " + reason), index_(index), reason_(reason)
    {
    }
    [[nodiscard]] int index() const { return index_; }
    [[nodiscard]] const std::string& reason() const { return reason_; }

private:
    int index_;
    std::string reason_;
};

inline constexpr int kBoxobanSize = 10;

struct BoxobanLevel {
    int index = 0;
    /// kBoxobanSize rows of '#', '$', '.', '@', '*', '+' and ' '.
    std::vector<std::string> rows;
};

std::vector<BoxobanLevel> parse_boxoban(std::string_view text);
/// Boxes become boulders, goals fountains, the player the start cell.
std::string boxoban_des(const BoxobanLevel& level);
std::vector<LevelBlueprint> load_boxoban(std::string_view text);
/// Embedded corpus for "unfiltered", "medium" or "hard".
const std::vector<BoxobanLevel>& boxoban_corpus(std::string_view split);

}  // namespace hackbox::tasks
