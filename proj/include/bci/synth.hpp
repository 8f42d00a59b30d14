#pragma once

#include <cstdint>
#include <vector>

#include "bci/stimulus.hpp"
#include "bci/types.hpp"

namespace bci {

inline constexpr double kLineNoiseHz = 50.0;

// Signal model for the synthetic subject and amplifier.
struct SynthConfig {
    std::vector<int> attended_led_ids;  // scripted intent, one per epoch
    double ssvep_amplitude_uv{2.0};
    double harmonic_ratio{0.3};
    double p300_amplitude_uv{5.0};
    double p300_peak_latency_ms{350.0};
    double p300_width_ms{200.0};
    double noise_sigma_uv{2.0};
    double line_noise_amplitude_uv{5.0};
    std::uint64_t rng_seed{1};
    // Padding so the first epoch's pre-stimulus window and the last epoch's
    // P300 window are fully covered.
    double lead_in_ms{200.0};
    double tail_ms{600.0};
};

struct SynthOutput {
    std::vector<SampleFrame> frames;
    std::vector<MarkerEvent> markers;  // on the recording timeline
    std::vector<Command> intents;      // one per epoch
};

// Renders the recording implied by the flash schedules: occipital channels
// (PO7, PO8, Oz) carry the attended LED's flicker fundamental plus one
// harmonic, midline channels (Fz, Cz, Pz) carry a positive half-cosine bump
// after the attended LED's flash, and every channel carries Gaussian noise
// plus a 50 Hz line component. Epoch k spans
// [leadIn + k*epochLength, leadIn + (k+1)*epochLength) on the recording
// timeline. Deterministic per seed, with per-region RNG substreams.
SynthOutput synthesize_eeg(const std::vector<FlashSchedule>& schedules,
                           const SynthConfig& synth, const StimulusConfig& config);

}  // namespace bci
