#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <string_view>

#include <json.hpp>

#include "hackbox/env.hpp"

namespace hackbox::protocol {

inline constexpr int kVersion = 1;

/// Grids become row-major nested arrays, message a string.
nlohmann::json observation_json(const sim::Observation& o);
nlohmann::json event_json(const sim::Event& e);

/// {"kind": "flat"|"sequential", "events": [{"event": "eat", "name": "apple", "reward": 1, ...}]}
reward::RewardConfig reward_from_json(const nlohmann::json& j);
tasks::Overrides overrides_from_json(const nlohmann::json& j);

/// One protocol session: a table of open environments keyed by handle.
class Session {
public:
    nlohmann::json handle(const nlohmann::json& request);
    /// Parses one request line and returns the response line (no newline).
    std::string handle_line(std::string_view line);

    [[nodiscard]] std::size_t open_envs() const { return envs_.size(); }

private:
    nlohmann::json make(const nlohmann::json& req);
    Env& env_for(const nlohmann::json& req);

    std::map<long long, std::unique_ptr<Env>> envs_;
    long long next_ = 1;
};

/// Announces the protocol version, then answers one request per line until EOF.
void serve(std::istream& in, std::ostream& out);

}  // namespace hackbox::protocol
