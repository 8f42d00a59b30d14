#include "bci/stimulus.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "bci/rng.hpp"

namespace bci {

std::int64_t half_period_ticks_for(double frequency_hz) {
    if (!(frequency_hz > 0.0)) throw ConfigError("stimulus frequency must be positive");
    const double ticks = static_cast<double>(kTicksPerSecond) / (2.0 * frequency_hz);
    const auto rounded = std::llround(ticks);
    if (rounded < 1) throw ConfigError("stimulus frequency exceeds the tick resolution");
    return rounded;
}

double achieved_frequency_hz(double frequency_hz) {
    const auto half = half_period_ticks_for(frequency_hz);
    return static_cast<double>(kTicksPerSecond) / (2.0 * static_cast<double>(half));
}

ToggleStream schedule_ssvep(double frequency_hz, double duration_s, int led_id) {
    if (!(duration_s > 0.0)) throw ConfigError("stimulus duration must be positive");
    ToggleStream s;
    s.led_id = led_id;
    s.target_frequency_hz = frequency_hz;
    s.half_period_ticks = half_period_ticks_for(frequency_hz);
    const auto duration_ticks =
        std::llround(duration_s * static_cast<double>(kTicksPerSecond));
    for (std::int64_t t = 0; t < duration_ticks; t += s.half_period_ticks) {
        s.edge_ticks.push_back(t);
    }
    return s;
}

FrequencyCheck verify_frequency(const ToggleStream& stream) {
    if (stream.edge_ticks.size() < 4) {
        throw DataError("frequency check needs at least 4 edges, got " +
                        std::to_string(stream.edge_ticks.size()));
    }
    const auto n = static_cast<std::int64_t>(stream.edge_ticks.size());
    const std::int64_t span = stream.edge_ticks.back() - stream.edge_ticks.front();
    if (span <= 0) throw DataError("toggle timestamps must be strictly increasing");

    FrequencyCheck c;
    // measured = 1 / (2 * mean half period); mean half period = span/(n-1) ticks.
    c.measured_hz = static_cast<double>(kTicksPerSecond) * static_cast<double>(n - 1) /
                    (2.0 * static_cast<double>(span));
    c.deviation_percent =
        std::abs(c.measured_hz - stream.target_frequency_hz) / stream.target_frequency_hz * 100.0;
    return c;
}

std::vector<FlashSchedule> schedule_flashes(const StimulusConfig& config,
                                            std::size_t epoch_count, std::uint64_t seed,
                                            double flash_duration_ms, double onset_jitter_ms) {
    if (epoch_count < 1) throw ConfigError("epoch count must be >= 1");
    const auto errors = validate_config(config);
    if (!errors.empty()) throw ConfigError("invalid stimulus config: " + errors.front());
    if (!(flash_duration_ms > 0.0)) throw ConfigError("flash duration must be positive");
    if (onset_jitter_ms < 0.0) throw ConfigError("onset jitter must be >= 0");

    const auto led_count = config.leds.size();
    const double slot_ms = static_cast<double>(config.epoch_ms) / static_cast<double>(led_count);
    if (flash_duration_ms > slot_ms) {
        throw ConfigError("flash duration exceeds the per-LED slot length");
    }
    const double jitter_ms = std::min(onset_jitter_ms, slot_ms - flash_duration_ms);
    const auto jitter_span_us = static_cast<std::uint64_t>(std::llround(jitter_ms * 1000.0));
    const auto slot_us = std::llround(slot_ms * 1000.0);

    std::vector<FlashSchedule> out;
    out.reserve(epoch_count);
    std::vector<std::size_t> order(led_count);
    for (std::size_t e = 0; e < epoch_count; ++e) {
        Rng rng(mix_seed(seed, e));
        std::iota(order.begin(), order.end(), std::size_t{0});
        rng.shuffle(order.data(), order.size());

        FlashSchedule sched;
        sched.epoch_index = e;
        for (std::size_t slot = 0; slot < led_count; ++slot) {
            const auto& led = config.leds[order[slot]];
            Flash f;
            f.led_id = led.led_id;
            f.marker = led.marker;
            f.duration_ms = flash_duration_ms;
            const std::int64_t jitter_us =
                jitter_span_us == 0
                    ? 0
                    : static_cast<std::int64_t>(rng.below(jitter_span_us));
            f.onset_us = static_cast<std::int64_t>(slot) * slot_us + jitter_us;
            sched.flashes.push_back(f);
        }
        out.push_back(std::move(sched));
    }
    return out;
}

std::vector<MarkerEvent> flash_markers(const std::vector<FlashSchedule>& schedules,
                                       std::int64_t epoch_length_us, std::int64_t origin_us) {
    std::vector<MarkerEvent> markers;
    for (const auto& sched : schedules) {
        const std::int64_t base =
            origin_us + static_cast<std::int64_t>(sched.epoch_index) * epoch_length_us;
        for (const auto& f : sched.flashes) {
            markers.push_back({f.marker, base + f.onset_us});
        }
    }
    std::sort(markers.begin(), markers.end(),
              [](const MarkerEvent& a, const MarkerEvent& b) { return a.t_us < b.t_us; });
    return markers;
}

std::vector<char> marker_bytes(const std::vector<MarkerEvent>& markers) {
    std::vector<char> bytes;
    bytes.reserve(markers.size());
    for (const auto& m : markers) bytes.push_back(m.code);
    return bytes;
}

}  // namespace bci
