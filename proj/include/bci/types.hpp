#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bci {

// Configuration / usage problems (CLI exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data (CLI exit code 3).
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Canonical channel order. Every file format and API in this project uses it.
inline constexpr int kNumChannels = 6;
inline constexpr std::array<const char*, kNumChannels> kChannelNames{
    "Fz", "Cz", "Pz", "PO7", "PO8", "Oz"};

enum class Channel : int { Fz = 0, Cz = 1, Pz = 2, PO7 = 3, PO8 = 4, Oz = 5 };

// One acquisition sample: timestamp in integer microseconds since stream
// start plus the six channel values in microvolts, canonical order.
struct SampleFrame {
    std::int64_t t_us{0};
    std::array<double, kNumChannels> uv{};
};

// Stimulus-onset tag. code is one of {'o','p','q','r'}.
struct MarkerEvent {
    char code{'?'};
    std::int64_t t_us{0};
};

inline constexpr std::array<char, 4> kMarkerCodes{'o', 'p', 'q', 'r'};

inline constexpr bool is_marker_code(char c) {
    for (char k : kMarkerCodes) {
        if (k == c) return true;
    }
    return false;
}

enum class Command { Forward, Right, Backward, Left, NoDecision };

const char* to_string(Command c);
std::optional<Command> command_from_string(const std::string& s);

// One flicker target: LED id, flicker frequency, marker code emitted when its
// event LED flashes, and the directional command it selects.
struct LedEntry {
    int led_id{0};
    double frequency_hz{0.0};
    char marker{'?'};
    Command command{Command::NoDecision};
};

// Analysis passband of the SSVEP branch; configured frequencies must fall inside.
inline constexpr double kPassbandLowHz = 6.5;
inline constexpr double kPassbandHighHz = 30.0;

// The full stimulation table plus the timing parameters every stage shares.
// Defaults give the standard four-target layout.
struct StimulusConfig {
    std::array<LedEntry, 4> leds{{
        {0, 7.0, 'o', Command::Forward},
        {1, 8.0, 'p', Command::Right},
        {2, 9.0, 'q', Command::Backward},
        {3, 10.0, 'r', Command::Left},
    }};
    double sample_rate_hz{250.0};
    int epoch_ms{2000};
    int p300_window_start_ms{290};
    int p300_window_end_ms{500};

    const LedEntry* find_frequency(double hz) const;
    const LedEntry* find_marker(char code) const;
    const LedEntry* find_led(int led_id) const;
};

// Returns an empty list when the config is usable; otherwise one message per
// violated invariant.
std::vector<std::string> validate_config(const StimulusConfig& config);

// Fused classifier output for one stimulation epoch.
// command != NoDecision exactly when agreement is true.
struct Decision {
    double ssvep_winner_hz{0.0};
    std::optional<char> p300_winner{};
    bool agreement{false};
    Command command{Command::NoDecision};
    std::int64_t decided_at_us{0};
};

}  // namespace bci
