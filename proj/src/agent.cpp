#include "lqrl/agent.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "lqrl/errors.hpp"
#include "lqrl/trajectory.hpp"

namespace lqrl {

namespace {

constexpr const char* kMagic = "lqrl-agent";

const char* const kThetaKeys[5] = {"theta1", "theta2", "theta3", "theta4", "theta5"};

double parse_number(const std::string& key, const std::string& text) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw ConfigError("agent: key '" + key + "': cannot parse '" + text +
                          "' as a number");
    return value;
}

}  // namespace

std::string format_agent(const AgentFile& agent) {
    std::ostringstream oss;
    oss << kMagic << " v" << agent.version << "\n";
    for (std::size_t i = 0; i < 5; ++i)
        oss << kThetaKeys[i] << ' ' << format_double(agent.params.raw[i]) << "\n";
    oss << "s " << format_double(agent.params.s()) << "\n";
    oss << "b " << format_double(agent.params.b()) << "\n";
    oss << "z_scale " << format_double(agent.encoding.z_scale) << "\n";
    oss << "v_scale " << format_double(agent.encoding.v_scale) << "\n";
    oss << "ve_scale " << format_double(agent.encoding.ve_scale) << "\n";
    oss << "angle_gain " << format_double(agent.encoding.angle_gain) << "\n";
    oss << "episodes " << agent.episodes << "\n";
    oss << "seed " << agent.seed << "\n";
    oss << "final_objective " << format_double(agent.final_objective) << "\n";
    return oss.str();
}

AgentFile parse_agent(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("agent: empty file");
    {
        std::istringstream header(line);
        std::string magic, version;
        header >> magic >> version;
        if (magic != kMagic)
            throw ConfigError("agent: not an agent file (bad magic '" + magic + "')");
        if (version != "v1")
            throw ConfigError("agent: unrecognized format version '" + version + "'");
    }

    std::map<std::string, std::string> fields;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const std::size_t space = line.find(' ');
        if (space == std::string::npos) {
            std::ostringstream oss;
            oss << "agent: line " << line_no << ": expected 'key value'";
            throw ConfigError(oss.str());
        }
        const std::string key = line.substr(0, space);
        if (!fields.emplace(key, line.substr(space + 1)).second)
            throw ConfigError("agent: duplicate key '" + key + "'");
    }

    AgentFile agent;
    agent.version = 1;
    const auto take = [&fields](const std::string& key) {
        const auto it = fields.find(key);
        if (it == fields.end()) throw ConfigError("agent: missing key '" + key + "'");
        const std::string value = it->second;
        fields.erase(it);
        return value;
    };

    for (std::size_t i = 0; i < 5; ++i)
        agent.params.raw[i] = parse_number(kThetaKeys[i], take(kThetaKeys[i]));
    agent.params.raw[5] = parse_number("s", take("s"));
    agent.params.raw[6] = parse_number("b", take("b"));
    agent.encoding.z_scale = parse_number("z_scale", take("z_scale"));
    agent.encoding.v_scale = parse_number("v_scale", take("v_scale"));
    agent.encoding.ve_scale = parse_number("ve_scale", take("ve_scale"));
    agent.encoding.angle_gain = parse_number("angle_gain", take("angle_gain"));
    agent.episodes = static_cast<int>(parse_number("episodes", take("episodes")));
    agent.seed = static_cast<std::uint64_t>(parse_number("seed", take("seed")));
    agent.final_objective = parse_number("final_objective", take("final_objective"));

    if (!fields.empty())
        throw ConfigError("agent: unknown key '" + fields.begin()->first + "'");

    agent.params.validate();
    agent.encoding.validate();
    return agent;
}

void save_agent(const AgentFile& agent, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("agent: cannot open '" + path.string() + "' for writing");
    out << format_agent(agent);
    if (!out) throw IoError("agent: write failed for '" + path.string() + "'");
}

AgentFile load_agent(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("agent: cannot open '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_agent(buffer.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

}  // namespace lqrl
