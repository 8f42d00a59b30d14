#include "bci/types.hpp"

#include <cmath>
#include <set>

namespace bci {

const char* to_string(Command c) {
    switch (c) {
        case Command::Forward: return "Forward";
        case Command::Right: return "Right";
        case Command::Backward: return "Backward";
        case Command::Left: return "Left";
        case Command::NoDecision: return "NoDecision";
    }
    return "NoDecision";
}

std::optional<Command> command_from_string(const std::string& s) {
    if (s == "Forward") return Command::Forward;
    if (s == "Right") return Command::Right;
    if (s == "Backward") return Command::Backward;
    if (s == "Left") return Command::Left;
    if (s == "NoDecision") return Command::NoDecision;
    return std::nullopt;
}

const LedEntry* StimulusConfig::find_frequency(double hz) const {
    for (const auto& led : leds) {
        if (led.frequency_hz == hz) return &led;
    }
    return nullptr;
}

const LedEntry* StimulusConfig::find_marker(char code) const {
    for (const auto& led : leds) {
        if (led.marker == code) return &led;
    }
    return nullptr;
}

const LedEntry* StimulusConfig::find_led(int led_id) const {
    for (const auto& led : leds) {
        if (led.led_id == led_id) return &led;
    }
    return nullptr;
}

std::vector<std::string> validate_config(const StimulusConfig& config) {
    std::vector<std::string> errors;

    std::set<double> freqs;
    std::set<char> markers;
    std::set<Command> commands;
    std::set<int> ids;
    for (const auto& led : config.leds) {
        if (!std::isfinite(led.frequency_hz)) {
            errors.push_back("led " + std::to_string(led.led_id) + ": frequency is not finite");
        } else if (led.frequency_hz < kPassbandLowHz || led.frequency_hz > kPassbandHighHz) {
            errors.push_back("led " + std::to_string(led.led_id) + ": frequency " +
                             std::to_string(led.frequency_hz) + " Hz outside passband [6.5, 30] Hz");
        }
        if (!freqs.insert(led.frequency_hz).second)
            errors.push_back("duplicate frequency " + std::to_string(led.frequency_hz) + " Hz");
        if (!markers.insert(led.marker).second)
            errors.push_back(std::string("duplicate marker '") + led.marker + "'");
        if (led.command == Command::NoDecision)
            errors.push_back("led " + std::to_string(led.led_id) + ": command must be a direction");
        else if (!commands.insert(led.command).second)
            errors.push_back(std::string("duplicate command ") + to_string(led.command));
        if (!ids.insert(led.led_id).second)
            errors.push_back("duplicate led id " + std::to_string(led.led_id));
        bool known = false;
        for (char c : kMarkerCodes) known = known || c == led.marker;
        if (!known)
            errors.push_back(std::string("unknown marker code '") + led.marker + "'");
    }

    if (config.sample_rate_hz <= 0.0)
        errors.push_back("sample rate must be positive");
    if (config.epoch_ms <= 0)
        errors.push_back("epoch length must be positive");
    if (config.p300_window_start_ms >= config.p300_window_end_ms)
        errors.push_back("p300 window start must precede window end");
    if (config.epoch_ms < config.p300_window_end_ms)
        errors.push_back("epoch length " + std::to_string(config.epoch_ms) +
                         " ms shorter than p300 window end " +
                         std::to_string(config.p300_window_end_ms) + " ms");

    return errors;
}

}  // namespace bci
