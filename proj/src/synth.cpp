#include "bci/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "bci/rng.hpp"

namespace bci {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void validate_synth(const SynthConfig& synth, const StimulusConfig& config,
                    std::size_t epoch_count) {
    if (synth.attended_led_ids.size() != epoch_count) {
        throw ConfigError("attended LED list must name one LED per epoch");
    }
    for (int id : synth.attended_led_ids) {
        if (config.find_led(id) == nullptr) {
            throw ConfigError("attended LED " + std::to_string(id) + " is not configured");
        }
    }
    if (synth.ssvep_amplitude_uv < 0.0 || synth.harmonic_ratio < 0.0 ||
        synth.p300_amplitude_uv < 0.0 || synth.noise_sigma_uv < 0.0 ||
        synth.line_noise_amplitude_uv < 0.0) {
        throw ConfigError("synthesis amplitudes must be >= 0");
    }
    if (!(synth.p300_peak_latency_ms > 0.0) || !(synth.p300_peak_latency_ms < 600.0)) {
        throw ConfigError("P300 peak latency must lie in (0, 600) ms");
    }
    if (!(synth.p300_width_ms > 0.0)) throw ConfigError("P300 width must be positive");
    if (synth.lead_in_ms < 0.0 || synth.tail_ms < 0.0) {
        throw ConfigError("padding must be >= 0");
    }
}

}  // namespace

SynthOutput synthesize_eeg(const std::vector<FlashSchedule>& schedules,
                           const SynthConfig& synth, const StimulusConfig& config) {
    const auto errors = validate_config(config);
    if (!errors.empty()) throw ConfigError("invalid stimulus config: " + errors.front());
    if (schedules.empty()) throw ConfigError("no stimulation epochs to synthesize");
    const std::size_t epochs = schedules.size();
    validate_synth(synth, config, epochs);

    const double fs = config.sample_rate_hz;
    const auto epoch_len_us = static_cast<std::int64_t>(config.epoch_ms) * 1000;
    const auto lead_in_us = std::llround(synth.lead_in_ms * 1000.0);
    const auto tail_us = std::llround(synth.tail_ms * 1000.0);
    const std::int64_t total_us =
        lead_in_us + static_cast<std::int64_t>(epochs) * epoch_len_us + tail_us;
    const auto total_samples =
        static_cast<std::size_t>(std::llround(static_cast<double>(total_us) * fs / 1e6));

    // Attended flicker tone per epoch, at the frequency the tick-quantized
    // scheduler actually realizes.
    std::vector<double> tone_hz(epochs);
    std::vector<std::int64_t> bump_center_us(epochs);
    std::vector<Command> intents(epochs);
    for (std::size_t e = 0; e < epochs; ++e) {
        const auto& sched = schedules[e];
        if (sched.epoch_index != e) throw ConfigError("flash schedules must be in epoch order");
        const int attended = synth.attended_led_ids[e];
        const LedEntry* led = config.find_led(attended);
        tone_hz[e] = achieved_frequency_hz(led->frequency_hz);
        intents[e] = led->command;

        const auto flash = std::find_if(sched.flashes.begin(), sched.flashes.end(),
                                        [&](const Flash& f) { return f.led_id == attended; });
        if (flash == sched.flashes.end()) {
            throw ConfigError("epoch " + std::to_string(e) + " has no flash for LED " +
                              std::to_string(attended));
        }
        bump_center_us[e] = lead_in_us + static_cast<std::int64_t>(e) * epoch_len_us +
                            flash->onset_us + std::llround(synth.p300_peak_latency_ms * 1000.0);
    }

    // Independent noise streams: lead-in, one per epoch, tail.
    std::vector<Rng> rngs;
    rngs.reserve(epochs + 2);
    for (std::size_t r = 0; r < epochs + 2; ++r) rngs.emplace_back(mix_seed(synth.rng_seed, r));

    const double half_width_us = synth.p300_width_ms * 500.0;

    SynthOutput out;
    out.intents = std::move(intents);
    out.markers = flash_markers(schedules, epoch_len_us, lead_in_us);
    out.frames.reserve(total_samples);

    for (std::size_t i = 0; i < total_samples; ++i) {
        const std::int64_t t_us = std::llround(static_cast<double>(i) * 1e6 / fs);
        const double t_s = static_cast<double>(t_us) * 1e-6;
        const std::int64_t rel_us = t_us - lead_in_us;

        std::size_t region;  // 0 = lead-in, 1..epochs = epoch, epochs+1 = tail
        std::size_t epoch;   // epoch owning the flicker tone
        if (rel_us < 0) {
            region = 0;
            epoch = 0;
        } else {
            const auto e = static_cast<std::size_t>(rel_us / epoch_len_us);
            if (e >= epochs) {
                region = epochs + 1;
                epoch = epochs - 1;
            } else {
                region = e + 1;
                epoch = e;
            }
        }

        const double f = tone_hz[epoch];
        const double ssvep =
            synth.ssvep_amplitude_uv *
            (std::sin(kTwoPi * f * t_s) +
             synth.harmonic_ratio * std::sin(kTwoPi * 2.0 * f * t_s));

        // A bump can spill past its epoch boundary, so look one epoch back.
        double bump = 0.0;
        for (std::size_t e = (epoch == 0 ? 0 : epoch - 1); e <= epoch; ++e) {
            const double d_us = static_cast<double>(t_us - bump_center_us[e]);
            if (std::abs(d_us) <= half_width_us) {
                bump += synth.p300_amplitude_uv *
                        std::cos(std::numbers::pi * d_us / (2.0 * half_width_us));
            }
        }

        const double line = synth.line_noise_amplitude_uv * std::sin(kTwoPi * kLineNoiseHz * t_s);

        SampleFrame frame;
        frame.t_us = t_us;
        Rng& rng = rngs[region];
        for (std::size_t ch = 0; ch < kNumChannels; ++ch) {
            double v = line + synth.noise_sigma_uv * rng.gaussian();
            if (ch >= 3) {
                v += ssvep;  // PO7, PO8, Oz
            } else {
                v += bump;  // Fz, Cz, Pz
            }
            frame.uv[ch] = v;
        }
        out.frames.push_back(frame);
    }
    return out;
}

}  // namespace bci
