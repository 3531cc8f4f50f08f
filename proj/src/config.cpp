#include "featherwave/config.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "featherwave/errors.hpp"

namespace fw {

namespace {

// Single listing of keys -> members shared by the text parser and JSON I/O.
template <typename Visitor>
void visit_fields(RunConfig& c, Visitor&& v) {
    v("sample_rate", c.sample_rate);
    v("n_bands", c.n_bands);
    v("mulaw_bits", c.mulaw_bits);
    v("lpc_order", c.lpc_order);
    v("preemphasis", c.preemphasis);
    v("lag_window_hz", c.lag_window_hz);
    v("hop", c.hop);
    v("win_length", c.win_length);
    v("fft_size", c.fft_size);
    v("n_mels", c.n_mels);
    v("proto_length", c.proto_length);
    v("kaiser_beta", c.kaiser_beta);
    v("cutoff_ratio", c.cutoff_ratio);
    v("gru_size", c.gru_size);
    v("affine_size", c.affine_size);
    v("embed_size", c.embed_size);
    v("conv_channels", c.conv_channels);
    v("subtract_t", c.subtract_t);
    v("seed", c.seed);
    v("threads", c.threads);
    v("lr", c.lr);
    v("adam_beta1", c.adam_beta1);
    v("adam_beta2", c.adam_beta2);
    v("adam_eps", c.adam_eps);
    v("batch", c.batch);
    v("window_steps", c.window_steps);
    v("iterations", c.iterations);
    v("log_every", c.log_every);
    v("sparsity_warmup_target", c.sparsity_warmup_target);
    v("sparsity_warmup_iters", c.sparsity_warmup_iters);
    v("sparsity_warmup_maintain", c.sparsity_warmup_maintain);
    v("sparsity_loop_increment", c.sparsity_loop_increment);
    v("sparsity_loop_ramp", c.sparsity_loop_ramp);
    v("sparsity_loop_maintain", c.sparsity_loop_maintain);
    v("sparsity_loops", c.sparsity_loops);
    v("schedule_scale", c.schedule_scale);
}

void parse_into(const std::string& key, const std::string& value, RunConfig& cfg) {
    bool found = false;
    visit_fields(cfg, [&](const char* name, auto& field) {
        if (found || key != name) return;
        found = true;
        std::istringstream ss(value);
        ss >> field;
        if (ss.fail()) throw ConfigError("bad value for config key '" + key + "': " + value);
    });
    if (!found) throw ConfigError("unknown config key: " + key);
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

void RunConfig::validate() const {
    auto require = [](bool ok, const std::string& msg) {
        if (!ok) throw ConfigError("config: " + msg);
    };
    require(sample_rate > 0, "sample_rate must be positive");
    require(n_bands > 0, "n_bands must be positive");
    require(mulaw_bits > 0 && mulaw_bits % 2 == 0,
            "mulaw_bits must be even (coarse/fine split needs Q^2 levels)");
    require(lpc_order > 0, "lpc_order must be positive");
    require(preemphasis >= 0.0 && preemphasis < 1.0, "preemphasis must be in [0, 1)");
    require(hop > 0 && hop % n_bands == 0, "hop must be a positive multiple of n_bands");
    require(win_length > 0 && win_length <= fft_size, "need 0 < win_length <= fft_size");
    require(fft_size > 0 && (fft_size & (fft_size - 1)) == 0, "fft_size must be a power of two");
    require(n_mels > 0, "n_mels must be positive");
    require((fft_size / 2) % n_bands == 0, "fft_size/2 must be divisible by n_bands");
    require(proto_length % 2 == 1, "proto_length must be odd");
    require(proto_length >= 4 * n_bands, "proto_length must be >= 4*n_bands");
    require(cutoff_ratio > 0.0 && cutoff_ratio < 0.5, "cutoff_ratio must be in (0, 0.5)");
    require(gru_size > 0 && gru_size % 16 == 0, "gru_size must be a positive multiple of 16");
    require(affine_size > 0 && embed_size > 0 && conv_channels > 0, "network sizes must be positive");
    require(subtract_t >= 0.0 && subtract_t < 1.0 / q_root(),
            "subtract_t must be in [0, 1/Q)");
    require(threads >= 1, "threads must be >= 1");
    require(lr > 0.0, "lr must be positive");
    require(window_steps > 0, "window_steps must be positive");
    require(window_steps <= steps_per_frame(), "window_steps must be <= hop/n_bands");
    require(batch > 0 && batch % (window_steps * n_bands) == 0,
            "batch must be a multiple of window_steps*n_bands");
    require(iterations >= 0, "iterations must be >= 0");
    require(log_every > 0, "log_every must be positive");
    require(sparsity_warmup_target >= 0.0 && sparsity_warmup_target < 1.0,
            "warmup target must be in [0, 1)");
    require(sparsity_loop_increment >= 0.0, "loop increment must be >= 0");
    require(sparsity_warmup_target + sparsity_loops * sparsity_loop_increment < 1.0,
            "final sparsity must be < 1");
    require(sparsity_warmup_iters > 0 && sparsity_loop_ramp > 0, "ramp lengths must be positive");
    require(sparsity_warmup_maintain >= 0 && sparsity_loop_maintain >= 0 && sparsity_loops >= 0,
            "schedule counts must be >= 0");
    require(schedule_scale >= 1, "schedule_scale must be >= 1");
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    RunConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
        parse_into(trim(line.substr(0, eq)), trim(line.substr(eq + 1)), cfg);
    }
    cfg.validate();
    return cfg;
}

void RunConfig::apply_override(const std::string& key_equals_value) {
    const auto eq = key_equals_value.find('=');
    if (eq == std::string::npos)
        throw ConfigError("override must be key=value: " + key_equals_value);
    parse_into(trim(key_equals_value.substr(0, eq)), trim(key_equals_value.substr(eq + 1)), *this);
}

std::string RunConfig::to_json() const {
    nlohmann::json j;
    visit_fields(const_cast<RunConfig&>(*this),
                 [&](const char* name, auto& field) { j[name] = field; });
    return j.dump();
}

RunConfig RunConfig::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    RunConfig cfg;
    visit_fields(cfg, [&](const char* name, auto& field) {
        if (j.contains(name)) field = j.at(name).get<std::decay_t<decltype(field)>>();
    });
    cfg.validate();
    return cfg;
}

}  // namespace fw
