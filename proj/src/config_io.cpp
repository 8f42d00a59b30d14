#include "bci/config_io.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>

namespace bci {
namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double parse_number(const std::string& value, const std::string& key) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (value.empty() || end != value.c_str() + value.size()) {
        throw ConfigError("config key '" + key + "': bad number '" + value + "'");
    }
    return v;
}

void parse_led(LedEntry& led, const std::string& value, const std::string& key) {
    const auto c1 = value.find(',');
    const auto c2 = value.find(',', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
        throw ConfigError("config key '" + key + "': expected 'frequency_hz,marker,command'");
    }
    led.frequency_hz = parse_number(trim(value.substr(0, c1)), key);
    const std::string marker = trim(value.substr(c1 + 1, c2 - c1 - 1));
    if (marker.size() != 1 || !is_marker_code(marker[0])) {
        throw ConfigError("config key '" + key + "': bad marker '" + marker + "'");
    }
    led.marker = marker[0];
    const std::string cmd_text = trim(value.substr(c2 + 1));
    const auto cmd = command_from_string(cmd_text);
    if (!cmd || *cmd == Command::NoDecision) {
        throw ConfigError("config key '" + key + "': bad command '" + cmd_text + "'");
    }
    led.command = *cmd;
}

}  // namespace

void apply_config_override(StimulusConfig& config, const std::string& key,
                           const std::string& value) {
    if (key == "sample_rate_hz") {
        config.sample_rate_hz = parse_number(value, key);
    } else if (key == "epoch_ms") {
        config.epoch_ms = static_cast<int>(parse_number(value, key));
    } else if (key == "p300_window_start_ms") {
        config.p300_window_start_ms = static_cast<int>(parse_number(value, key));
    } else if (key == "p300_window_end_ms") {
        config.p300_window_end_ms = static_cast<int>(parse_number(value, key));
    } else if (key.size() == 4 && key.compare(0, 3, "led") == 0 && key[3] >= '0' &&
               key[3] <= '3') {
        parse_led(config.leds[static_cast<std::size_t>(key[3] - '0')], value, key);
    } else {
        throw ConfigError("unknown config key '" + key + "'");
    }
}

StimulusConfig load_stimulus_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path);

    StimulusConfig config;
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path + ":" + std::to_string(row) + ": expected 'key = value'");
        }
        apply_config_override(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }

    const auto errors = validate_config(config);
    if (!errors.empty()) {
        throw ConfigError(path + ": " + errors.front());
    }
    return config;
}

}  // namespace bci
