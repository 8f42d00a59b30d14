#pragma once

#include <cstdint>
#include <vector>

#include "bci/types.hpp"

namespace bci {

// Scheduler quantum: 125/9 ns (one period of a 72 MHz clock).
inline constexpr std::int64_t kTickNumeratorNs = 125;
inline constexpr std::int64_t kTickDenominator = 9;
inline constexpr std::int64_t kTicksPerSecond = 72'000'000;

// Alternating on/off LED edges, quantized to scheduler ticks. The first edge
// switches the LED on.
struct ToggleStream {
    int led_id{0};
    double target_frequency_hz{0.0};
    std::int64_t half_period_ticks{0};
    std::vector<std::int64_t> edge_ticks;

    double edge_time_ns(std::size_t i) const {
        return static_cast<double>(edge_ticks[i]) * 125.0 / 9.0;
    }
};

struct FrequencyCheck {
    double measured_hz{0.0};
    double deviation_percent{0.0};
};

// Half period in ticks: round(ticksPerSecond / (2 f)).
std::int64_t half_period_ticks_for(double frequency_hz);

// Flicker frequency actually realized after tick quantization.
double achieved_frequency_hz(double frequency_hz);

ToggleStream schedule_ssvep(double frequency_hz, double duration_s, int led_id = 0);

// Measured frequency from the mean inter-edge interval, computed in exact
// tick arithmetic. Requires at least 4 edges.
FrequencyCheck verify_frequency(const ToggleStream& stream);

struct Flash {
    int led_id{0};
    char marker{'?'};
    std::int64_t onset_us{0};  // relative to the epoch start
    double duration_ms{100.0};
};

// One flash per LED inside one stimulation epoch.
struct FlashSchedule {
    std::size_t epoch_index{0};
    std::vector<Flash> flashes;  // onset order
};

// Per epoch: the LEDs are permuted over equal slots of epochLength/ledCount
// and each onset is jittered uniformly within its slot, capped so flashes stay
// inside their slot. Deterministic per seed; epochs use independent
// substreams so generation order does not matter.
std::vector<FlashSchedule> schedule_flashes(const StimulusConfig& config,
                                            std::size_t epoch_count, std::uint64_t seed,
                                            double flash_duration_ms = 100.0,
                                            double onset_jitter_ms = 100.0);

// Marker stream for a flash sequence; epoch k starts at origin + k*epochLength.
std::vector<MarkerEvent> flash_markers(const std::vector<FlashSchedule>& schedules,
                                       std::int64_t epoch_length_us,
                                       std::int64_t origin_us = 0);

// Marker transport metadata; the wire itself is emulated as plain bytes.
struct SerialLinkInfo {
    int baud_rate{9600};
    int bits_per_byte{10};  // 8N1: start + payload + stop

    double byte_time_ms() const {
        return 1000.0 * static_cast<double>(bits_per_byte) / static_cast<double>(baud_rate);
    }
};

// One ASCII byte per marker, in stream order.
std::vector<char> marker_bytes(const std::vector<MarkerEvent>& markers);

}  // namespace bci
