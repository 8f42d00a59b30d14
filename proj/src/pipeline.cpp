#include "bci/pipeline.hpp"

#include <algorithm>
#include <cmath>

namespace bci {
namespace {

constexpr double kMeanOcc = 1.0 / 3.0;

}  // namespace

StreamingDecoder::StreamingDecoder(DecodeParams params, const Kernels& kernels)
    : params_(std::move(params)),
      kernels_(&kernels),
      bandpass_(design_bandpass(params_.bandpass_low_hz, params_.bandpass_high_hz,
                                params_.bandpass_order, params_.config.sample_rate_hz),
                1, kernels),
      lowpass_(design_lowpass(params_.lowpass_cutoff_hz, params_.lowpass_order,
                              params_.config.sample_rate_hz),
               1, kernels) {
    const auto errors = validate_config(params_.config);
    if (!errors.empty()) throw ConfigError("invalid stimulus config: " + errors.front());
    if (params_.notch_enabled) {
        notch_.emplace(design_notch(params_.notch_hz, params_.notch_q,
                                    params_.config.sample_rate_hz),
                       kNumChannels, kernels);
    }
    epoch_len_us_ = static_cast<std::int64_t>(params_.config.epoch_ms) * 1000;
    period_us_ = std::llround(1e6 / params_.config.sample_rate_hz);
}

void StreamingDecoder::push_frame(const SampleFrame& frame) {
    if (have_frame_ && frame.t_us <= last_frame_t_us_) {
        throw DataError("frame timestamps must be strictly increasing (" +
                        std::to_string(frame.t_us) + " after " +
                        std::to_string(last_frame_t_us_) + ")");
    }
    for (double v : frame.uv) {
        if (!std::isfinite(v)) throw DataError("non-finite sample value");
    }
    last_frame_t_us_ = frame.t_us;
    have_frame_ = true;

    std::array<double, kNumChannels> ch = frame.uv;
    if (notch_) notch_->process(ch.data(), ch.data());

    const double occ = (ch[static_cast<int>(Channel::PO7)] +
                        ch[static_cast<int>(Channel::PO8)] +
                        ch[static_cast<int>(Channel::Oz)]) *
                       kMeanOcc;
    double ssvep = 0.0;
    bandpass_.process(&occ, &ssvep);
    ssvep_buf_.push_back({frame.t_us, ssvep});

    double parietal;
    if (params_.p300_channel == P300ChannelMode::Pz) {
        parietal = ch[static_cast<int>(Channel::Pz)];
    } else {
        parietal = (ch[static_cast<int>(Channel::Fz)] + ch[static_cast<int>(Channel::Cz)] +
                    ch[static_cast<int>(Channel::Pz)]) /
                   3.0;
    }
    double p300 = 0.0;
    lowpass_.process(&parietal, &p300);
    p300_buf_.push_back({frame.t_us, p300});

    try_process(false);
    prune();
}

void StreamingDecoder::push_marker(const MarkerEvent& marker) {
    if (!is_marker_code(marker.code)) {
        throw DataError(std::string("unknown marker code '") + marker.code + "'");
    }
    if (have_marker_ && marker.t_us < last_marker_t_us_) {
        throw DataError("marker timestamps must be non-decreasing");
    }
    last_marker_t_us_ = marker.t_us;
    have_marker_ = true;
    markers_.push_back(marker);
    try_process(false);
}

std::vector<double> StreamingDecoder::copy_branch(const std::deque<Timed>& buf,
                                                  std::int64_t from_us, std::int64_t to_us,
                                                  std::vector<std::int64_t>& t_out) const {
    const auto lo = std::lower_bound(buf.begin(), buf.end(), from_us,
                                     [](const Timed& s, std::int64_t t) { return s.t_us < t; });
    const auto hi = std::upper_bound(lo, buf.end(), to_us,
                                     [](std::int64_t t, const Timed& s) { return t < s.t_us; });
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(hi - lo));
    t_out.clear();
    t_out.reserve(static_cast<std::size_t>(hi - lo));
    for (auto it = lo; it != hi; ++it) {
        t_out.push_back(it->t_us);
        values.push_back(it->value);
    }
    return values;
}

std::optional<SsvepFeature> StreamingDecoder::ssvep_features_for(std::int64_t origin_us,
                                                                 std::string& note) {
    const std::int64_t end_us = origin_us + epoch_len_us_;
    std::vector<std::int64_t> times;
    const auto window = copy_branch(ssvep_buf_, origin_us, end_us - 1, times);
    const auto expected = static_cast<std::size_t>(
        std::llround(static_cast<double>(params_.config.epoch_ms) *
                     params_.config.sample_rate_hz / 1000.0));
    if (window.size() < expected || window.size() < params_.welch_segment) {
        note = "truncated: SSVEP window has " + std::to_string(window.size()) + " of " +
               std::to_string(expected) + " samples";
        return std::nullopt;
    }
    const auto psd = welch_psd(window, params_.config.sample_rate_hz, params_.welch_segment,
                               params_.welch_overlap, *kernels_);
    auto features = extract_ssvep_features(psd, params_.config, params_.band_half_width_hz);
    features.window_start_us = origin_us;
    features.window_end_us = end_us;
    return features;
}

void StreamingDecoder::process_group(const std::vector<MarkerEvent>& group, bool at_end) {
    EpochOutcome outcome;
    outcome.epoch_index = next_epoch_;
    outcome.decision.decided_at_us = group.front().t_us + epoch_len_us_;

    if (group.size() != params_.config.leds.size()) {
        outcome.note = "incomplete marker group: " + std::to_string(group.size()) + " of " +
                       std::to_string(params_.config.leds.size()) + " markers";
        ready_.push_back(std::move(outcome));
        ++next_epoch_;
        return;
    }
    for (std::size_t i = 0; i < group.size(); ++i) {
        for (std::size_t j = i + 1; j < group.size(); ++j) {
            if (group[i].code == group[j].code) {
                throw DataError(std::string("duplicate marker '") + group[i].code +
                                "' within one stimulation epoch");
            }
        }
    }

    std::string note;
    const auto features = ssvep_features_for(group.front().t_us, note);

    std::vector<P300Detection> detections;
    bool p300_truncated = false;
    for (const auto& marker : group) {
        std::vector<std::int64_t> times;
        const auto values =
            copy_branch(p300_buf_, marker.t_us - std::llround(params_.epoch_pre_ms * 1000.0) -
                                       period_us_,
                        marker.t_us + std::llround(params_.epoch_post_ms * 1000.0) + period_us_,
                        times);
        try {
            const Epoch raw = extract_epoch(times, values, marker, params_.config.sample_rate_hz,
                                            params_.epoch_pre_ms, params_.epoch_post_ms);
            const Epoch corrected = baseline_correct(raw);
            double threshold = params_.p300_threshold_uv;
            if (params_.p300_threshold_mode == P300ThresholdMode::RelativeBaselineSd) {
                threshold = params_.p300_relative_k * baseline_sd(corrected);
            }
            detections.push_back(
                detect_p300(corrected, static_cast<double>(params_.config.p300_window_start_ms),
                            static_cast<double>(params_.config.p300_window_end_ms), threshold));
        } catch (const DataError&) {
            p300_truncated = true;
            if (note.empty()) {
                note = std::string("truncated: epoch for marker '") + marker.code +
                       "' not fully covered";
            }
        }
    }

    if (!features || p300_truncated) {
        if (features) {
            const auto winner = ssvep_argmax(*features);
            outcome.decision.ssvep_winner_hz = winner.frequency_hz;
        }
        outcome.note = note.empty() ? "truncated" : note;
        ready_.push_back(std::move(outcome));
        ++next_epoch_;
        return;
    }

    const auto winner = select_p300_winner(detections);
    if (params_.p300_gate) {
        outcome.decision = decide(*features, winner, params_.config);
    } else {
        const auto ssvep = ssvep_argmax(*features);
        outcome.decision.ssvep_winner_hz = ssvep.frequency_hz;
        outcome.decision.p300_winner = winner;
        outcome.decision.agreement = true;
        outcome.decision.command = map_to_command(ssvep.frequency_hz, params_.config);
        outcome.decision.decided_at_us = features->window_end_us;
    }
    (void)at_end;
    ready_.push_back(std::move(outcome));
    ++next_epoch_;
}

void StreamingDecoder::try_process(bool at_end) {
    const auto group_size = params_.config.leds.size();
    for (;;) {
        if (markers_.size() < group_size) {
            if (at_end && !markers_.empty()) {
                std::vector<MarkerEvent> group(markers_.begin(), markers_.end());
                markers_.clear();
                process_group(group, true);
                continue;
            }
            return;
        }
        std::vector<MarkerEvent> group(markers_.begin(),
                                       markers_.begin() + static_cast<std::ptrdiff_t>(group_size));
        const std::int64_t ssvep_ready = group.front().t_us + epoch_len_us_ + period_us_;
        const std::int64_t p300_ready = group.back().t_us +
                                        std::llround(params_.epoch_post_ms * 1000.0) +
                                        period_us_;
        const std::int64_t ready_t = std::max(ssvep_ready, p300_ready);
        if (!at_end && (!have_frame_ || last_frame_t_us_ < ready_t)) return;

        markers_.erase(markers_.begin(), markers_.begin() + static_cast<std::ptrdiff_t>(group_size));
        process_group(group, at_end);
    }
}

void StreamingDecoder::prune() {
    // Keep everything any unprocessed epoch could still need, bounded by one
    // epoch length plus the analysis margins when no markers are pending.
    const std::int64_t margin_us =
        static_cast<std::int64_t>(std::llround((params_.epoch_pre_ms + params_.epoch_post_ms) *
                                               1000.0)) +
        4 * period_us_;
    std::int64_t floor_us = last_frame_t_us_ - epoch_len_us_ - margin_us - 100'000;
    if (!markers_.empty()) {
        const std::int64_t pre_us =
            static_cast<std::int64_t>(std::llround(params_.epoch_pre_ms * 1000.0));
        floor_us = std::min(floor_us, markers_.front().t_us - pre_us - 2 * period_us_);
    }
    while (!ssvep_buf_.empty() && ssvep_buf_.front().t_us < floor_us) ssvep_buf_.pop_front();
    while (!p300_buf_.empty() && p300_buf_.front().t_us < floor_us) p300_buf_.pop_front();
}

std::vector<EpochOutcome> StreamingDecoder::drain() {
    std::vector<EpochOutcome> out;
    out.swap(ready_);
    return out;
}

void StreamingDecoder::finish() { try_process(true); }

std::vector<EpochOutcome> decode_recording(const std::vector<SampleFrame>& frames,
                                           const std::vector<MarkerEvent>& markers,
                                           const DecodeParams& params, const Kernels& kernels) {
    StreamingDecoder decoder(params, kernels);
    for (const auto& m : markers) decoder.push_marker(m);
    for (const auto& f : frames) decoder.push_frame(f);
    decoder.finish();
    return decoder.drain();
}

}  // namespace bci
