#include "lqrl/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "lqrl/errors.hpp"

namespace lqrl {

namespace {

using json = nlohmann::ordered_json;

struct KeyBinder {
    const json& root;
    std::vector<std::string>* defaulted;
    std::vector<std::string> known;

    bool has(const std::string& key) {
        known.push_back(key);
        if (root.contains(key)) return true;
        if (defaulted != nullptr) defaulted->push_back(key);
        return false;
    }

    void number(const std::string& key, double& out) {
        if (!has(key)) return;
        const json& v = root.at(key);
        if (!v.is_number())
            throw ConfigError("config: key '" + key + "' must be a number");
        out = v.get<double>();
    }

    void integer(const std::string& key, int& out) {
        if (!has(key)) return;
        const json& v = root.at(key);
        if (!v.is_number_integer())
            throw ConfigError("config: key '" + key + "' must be an integer");
        out = v.get<int>();
    }

    void seed(const std::string& key, std::uint64_t& out) {
        if (!has(key)) return;
        const json& v = root.at(key);
        if (!v.is_number_integer() || (v.is_number_integer() && v.get<long long>() < 0))
            throw ConfigError("config: key '" + key + "' must be a non-negative integer");
        out = v.get<std::uint64_t>();
    }

    void string(const std::string& key, std::string& out) {
        if (!has(key)) return;
        const json& v = root.at(key);
        if (!v.is_string()) throw ConfigError("config: key '" + key + "' must be a string");
        out = v.get<std::string>();
    }
};

}  // namespace

int ExperimentConfig::sim_steps() const {
    const double ratio = sim_duration / env.dt;
    const double rounded = std::round(ratio);
    if (!(rounded >= 1.0) || std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio))
        throw ConfigError("config: sim_duration must be a positive multiple of dt");
    return static_cast<int>(rounded);
}

void ExperimentConfig::validate() const {
    env.validate();
    lyapunov.validate();
    rewards.validate();
    train.validate();
    encoding.validate();
    pid.validate();
    linear.validate();
    if (!std::isfinite(v_set)) throw ConfigError("config: v_set must be finite");
    if (!x0.finite()) throw ConfigError("config: initial state (z0, vr0, ve0) must be finite");
    if (!(std::isfinite(sim_duration) && sim_duration > 0.0))
        throw ConfigError("config: sim_duration must be > 0");
    if (!(std::isfinite(stable_z_bound) && stable_z_bound > 0.0))
        throw ConfigError("config: stable_z_bound must be > 0");
    (void)sim_steps();
}

const char* to_string(FdScheme scheme) {
    switch (scheme) {
        case FdScheme::Central: return "central";
        case FdScheme::Forward: return "forward";
        case FdScheme::Spsa: return "spsa";
    }
    return "central";
}

FdScheme fd_scheme_from_string(const std::string& name) {
    if (name == "central") return FdScheme::Central;
    if (name == "forward") return FdScheme::Forward;
    if (name == "spsa") return FdScheme::Spsa;
    throw ConfigError("config: fd_scheme must be one of central|forward|spsa, got '" +
                      name + "'");
}

ExperimentConfig parse_config(const std::string& text,
                              std::vector<std::string>* defaulted_keys) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config: top level must be a JSON object");

    ExperimentConfig cfg;
    KeyBinder bind{root, defaulted_keys, {}};

    bind.number("dt", cfg.env.dt);
    bind.number("h", cfg.env.h);
    bind.number("d0", cfg.env.d0);
    bind.number("u_min", cfg.env.u_min);
    bind.number("u_max", cfg.env.u_max);
    bind.number("beta", cfg.lyapunov.beta);
    bind.number("gamma", cfg.lyapunov.gamma);
    bind.number("lambda", cfg.lyapunov.lambda);
    bind.number("c", cfg.lyapunov.c);
    bind.number("alpha", cfg.train.alpha);
    bind.integer("episodes", cfg.train.episodes);
    bind.number("sim_duration", cfg.sim_duration);

    int horizon = cfg.train.horizon;
    bind.integer("horizon", horizon);
    cfg.train.horizon = horizon;
    cfg.env.horizon = horizon;

    bind.number("fd_epsilon", cfg.train.fd_epsilon);
    std::string scheme = to_string(cfg.train.scheme);
    bind.string("fd_scheme", scheme);
    cfg.train.scheme = fd_scheme_from_string(scheme);
    bind.seed("seed", cfg.train.seed);

    bind.number("w_z", cfg.rewards.w_z);
    bind.number("w_a", cfg.rewards.w_a);
    bind.number("w_j", cfg.rewards.w_j);

    bind.number("z_scale", cfg.encoding.z_scale);
    bind.number("v_scale", cfg.encoding.v_scale);
    bind.number("ve_scale", cfg.encoding.ve_scale);
    bind.number("angle_gain", cfg.encoding.angle_gain);

    bind.number("kp", cfg.pid.kp);
    bind.number("ki", cfg.pid.ki);
    bind.number("kd", cfg.pid.kd);
    bind.number("integral_limit", cfg.pid.integral_limit);

    bind.number("k_z", cfg.linear.k_z);
    bind.number("k_vr", cfg.linear.k_vr);
    bind.number("k_ve", cfg.linear.k_ve);
    bind.number("linear_bias", cfg.linear.bias);
    bind.number("v_set", cfg.v_set);

    bind.number("z0", cfg.x0.z);
    bind.number("vr0", cfg.x0.v_r);
    bind.number("ve0", cfg.x0.v_e);

    bind.number("stable_z_bound", cfg.stable_z_bound);
    bind.string("out_dir", cfg.out_dir);

    for (const auto& item : root.items()) {
        bool recognized = false;
        for (const std::string& key : bind.known) {
            if (key == item.key()) {
                recognized = true;
                break;
            }
        }
        if (!recognized)
            throw ConfigError("config: unknown key '" + item.key() + "'");
    }

    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path,
                             std::vector<std::string>* defaulted_keys) {
    std::ifstream in(path);
    if (!in) throw IoError("config: cannot open '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_config(buffer.str(), defaulted_keys);
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

std::string save_config(const ExperimentConfig& cfg) {
    json root;
    root["dt"] = cfg.env.dt;
    root["h"] = cfg.env.h;
    root["d0"] = cfg.env.d0;
    root["u_min"] = cfg.env.u_min;
    root["u_max"] = cfg.env.u_max;
    root["beta"] = cfg.lyapunov.beta;
    root["gamma"] = cfg.lyapunov.gamma;
    root["lambda"] = cfg.lyapunov.lambda;
    root["c"] = cfg.lyapunov.c;
    root["alpha"] = cfg.train.alpha;
    root["episodes"] = cfg.train.episodes;
    root["sim_duration"] = cfg.sim_duration;
    root["horizon"] = cfg.train.horizon;
    root["fd_epsilon"] = cfg.train.fd_epsilon;
    root["fd_scheme"] = to_string(cfg.train.scheme);
    root["seed"] = cfg.train.seed;
    root["w_z"] = cfg.rewards.w_z;
    root["w_a"] = cfg.rewards.w_a;
    root["w_j"] = cfg.rewards.w_j;
    root["z_scale"] = cfg.encoding.z_scale;
    root["v_scale"] = cfg.encoding.v_scale;
    root["ve_scale"] = cfg.encoding.ve_scale;
    root["angle_gain"] = cfg.encoding.angle_gain;
    root["kp"] = cfg.pid.kp;
    root["ki"] = cfg.pid.ki;
    root["kd"] = cfg.pid.kd;
    root["integral_limit"] = cfg.pid.integral_limit;
    root["k_z"] = cfg.linear.k_z;
    root["k_vr"] = cfg.linear.k_vr;
    root["k_ve"] = cfg.linear.k_ve;
    root["linear_bias"] = cfg.linear.bias;
    root["v_set"] = cfg.v_set;
    root["z0"] = cfg.x0.z;
    root["vr0"] = cfg.x0.v_r;
    root["ve0"] = cfg.x0.v_e;
    root["stable_z_bound"] = cfg.stable_z_bound;
    root["out_dir"] = cfg.out_dir;
    return root.dump(2) + "\n";
}

}  // namespace lqrl
