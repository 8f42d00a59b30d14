#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "bci/types.hpp"

namespace bci {

// Marker-locked single-channel window, [-pre, +post] around the marker.
struct Epoch {
    char marker_code{'?'};
    std::int64_t marker_t_us{0};
    double sample_rate_hz{250.0};
    double pre_ms{200.0};
    double post_ms{600.0};
    std::vector<double> samples;  // µV; index pre_samples() is the marker sample

    std::size_t pre_samples() const {
        return static_cast<std::size_t>(std::llround(pre_ms * sample_rate_hz / 1000.0));
    }
    double time_ms_at(std::size_t index) const {
        return (static_cast<double>(index) - static_cast<double>(pre_samples())) * 1000.0 /
               sample_rate_hz;
    }
};

struct P300Detection {
    char marker_code{'?'};
    std::int64_t marker_t_us{0};
    double peak_latency_ms{0.0};
    double peak_amplitude_uv{0.0};
    bool valid{false};
    double threshold_uv{0.0};
};

// Cuts the epoch around the sample nearest to the marker timestamp (offset at
// most half a sample period). Throws DataError when the stream does not cover
// the full window; epochs are never padded.
Epoch extract_epoch(const std::vector<std::int64_t>& t_us, const std::vector<double>& values,
                    const MarkerEvent& marker, double sample_rate_hz, double pre_ms = 200.0,
                    double post_ms = 600.0);

// Subtracts the mean of the samples before time zero from every sample.
Epoch baseline_correct(const Epoch& epoch);

// Population standard deviation of the samples before time zero.
double baseline_sd(const Epoch& epoch);

// Largest sample within [windowStart, windowEnd] ms (inclusive, first index on
// exact ties). Valid when the peak reaches the threshold and is positive.
P300Detection detect_p300(const Epoch& epoch, double window_start_ms = 290.0,
                          double window_end_ms = 500.0, double threshold_uv = 2.0);

// Valid detection with the largest amplitude; ties go to the earliest marker.
// Throws DataError on a duplicate marker code.
std::optional<char> select_p300_winner(const std::vector<P300Detection>& detections);

}  // namespace bci
