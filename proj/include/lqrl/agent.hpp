#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "lqrl/qpolicy.hpp"

namespace lqrl {

/**
 * Versioned plain-text persistence of a trained policy: the 7 parameters,
 * the encoding they were trained with, and the training provenance.
 */
struct AgentFile {
    int version = 1;
    PolicyParams params;
    EncodingConfig encoding;
    int episodes = 0;
    std::uint64_t seed = 0;
    double final_objective = 0.0;
};

/// Serialize to the line-oriented `key value` format (17 significant digits).
std::string format_agent(const AgentFile& agent);

/// Parse agent text. Throws ConfigError on unknown/missing keys or bad version.
AgentFile parse_agent(const std::string& text);

void save_agent(const AgentFile& agent, const std::filesystem::path& path);
AgentFile load_agent(const std::filesystem::path& path);

}  // namespace lqrl
