#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "bci/decoder.hpp"
#include "bci/erp.hpp"
#include "bci/filters.hpp"
#include "bci/kernels.hpp"
#include "bci/spectral.hpp"
#include "bci/types.hpp"

namespace bci {

enum class P300ChannelMode { Pz, MeanFzCzPz };
enum class P300ThresholdMode { Absolute, RelativeBaselineSd };

struct DecodeParams {
    StimulusConfig config;
    bool notch_enabled{true};
    double notch_hz{50.0};
    double notch_q{30.0};
    double bandpass_low_hz{6.5};
    double bandpass_high_hz{30.0};
    int bandpass_order{4};
    double lowpass_cutoff_hz{15.0};
    int lowpass_order{4};
    std::size_t welch_segment{500};
    double welch_overlap{0.5};
    double band_half_width_hz{0.5};
    P300ChannelMode p300_channel{P300ChannelMode::Pz};
    P300ThresholdMode p300_threshold_mode{P300ThresholdMode::Absolute};
    double p300_threshold_uv{2.0};
    double p300_relative_k{2.0};
    double epoch_pre_ms{200.0};
    double epoch_post_ms{600.0};
    // Diagnostic ablation: when false, the SSVEP winner alone sets the
    // command; the observed P300 winner is still logged.
    bool p300_gate{true};
};

struct EpochOutcome {
    std::size_t epoch_index{0};
    Decision decision;
    std::string note;  // non-empty when the epoch could not be fully analyzed
};

// Streaming hybrid decoder. Frames flow through the 50 Hz notch, then split:
// the mean of PO7/PO8/Oz runs through the bandpass into Welch band features,
// and the P300 channel runs through the low-pass into marker-locked epochs.
// One decision is emitted per group of `leds` markers; memory stays bounded
// by a small multiple of the stimulation epoch length.
class StreamingDecoder {
public:
    explicit StreamingDecoder(DecodeParams params, const Kernels& kernels = active_kernels());

    // Frames must arrive in strictly increasing timestamp order.
    void push_frame(const SampleFrame& frame);
    // Markers must arrive in non-decreasing timestamp order; they may lead or
    // lag the frame stream arbitrarily.
    void push_marker(const MarkerEvent& marker);

    // Completed epochs, in epoch order; call any time.
    std::vector<EpochOutcome> drain();

    // Signals end of stream: pending epochs are finalized, truncated ones
    // yield NoDecision with a note.
    void finish();

private:
    struct Timed {
        std::int64_t t_us;
        double value;
    };

    void try_process(bool at_end);
    void process_group(const std::vector<MarkerEvent>& group, bool at_end);
    std::optional<SsvepFeature> ssvep_features_for(std::int64_t origin_us, std::string& note);
    std::vector<double> copy_branch(const std::deque<Timed>& buf, std::int64_t from_us,
                                    std::int64_t to_us, std::vector<std::int64_t>& t_out) const;
    void prune();

    DecodeParams params_;
    const Kernels* kernels_;
    std::optional<FilterState> notch_;
    FilterState bandpass_;
    FilterState lowpass_;

    std::deque<Timed> ssvep_buf_;
    std::deque<Timed> p300_buf_;
    std::deque<MarkerEvent> markers_;
    std::vector<EpochOutcome> ready_;
    std::size_t next_epoch_{0};
    std::int64_t last_frame_t_us_{0};
    bool have_frame_{false};
    std::int64_t last_marker_t_us_{0};
    bool have_marker_{false};
    std::int64_t epoch_len_us_{0};
    std::int64_t period_us_{0};
};

// Convenience offline wrapper over the streaming decoder.
std::vector<EpochOutcome> decode_recording(const std::vector<SampleFrame>& frames,
                                           const std::vector<MarkerEvent>& markers,
                                           const DecodeParams& params,
                                           const Kernels& kernels = active_kernels());

}  // namespace bci
