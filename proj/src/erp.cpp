#include "bci/erp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bci {

Epoch extract_epoch(const std::vector<std::int64_t>& t_us, const std::vector<double>& values,
                    const MarkerEvent& marker, double sample_rate_hz, double pre_ms,
                    double post_ms) {
    if (t_us.size() != values.size()) throw DataError("timestamp/value length mismatch");
    if (t_us.empty()) throw DataError("empty stream");
    if (!(sample_rate_hz > 0.0)) throw ConfigError("sample rate must be positive");

    const auto it = std::lower_bound(t_us.begin(), t_us.end(), marker.t_us);
    std::size_t idx = static_cast<std::size_t>(it - t_us.begin());
    if (idx == t_us.size()) {
        idx = t_us.size() - 1;
    } else if (idx > 0 && marker.t_us - t_us[idx - 1] <= t_us[idx] - marker.t_us) {
        --idx;
    }
    const double half_period_us = 0.5e6 / sample_rate_hz;
    if (static_cast<double>(std::llabs(t_us[idx] - marker.t_us)) > half_period_us) {
        throw DataError("marker at " + std::to_string(marker.t_us) +
                        " us has no sample within half a period");
    }

    const auto npre = static_cast<std::size_t>(std::llround(pre_ms * sample_rate_hz / 1000.0));
    const auto npost = static_cast<std::size_t>(std::llround(post_ms * sample_rate_hz / 1000.0));
    if (idx < npre || idx + npost >= t_us.size()) {
        throw DataError("truncated epoch around marker at " + std::to_string(marker.t_us) +
                        " us");
    }

    Epoch e;
    e.marker_code = marker.code;
    e.marker_t_us = marker.t_us;
    e.sample_rate_hz = sample_rate_hz;
    e.pre_ms = pre_ms;
    e.post_ms = post_ms;
    e.samples.assign(values.begin() + static_cast<std::ptrdiff_t>(idx - npre),
                     values.begin() + static_cast<std::ptrdiff_t>(idx + npost + 1));
    return e;
}

Epoch baseline_correct(const Epoch& epoch) {
    Epoch out = epoch;
    const std::size_t npre = epoch.pre_samples();
    if (npre == 0 || epoch.samples.size() < npre) return out;
    double mean = 0.0;
    for (std::size_t i = 0; i < npre; ++i) mean += epoch.samples[i];
    mean /= static_cast<double>(npre);
    for (double& v : out.samples) v -= mean;
    return out;
}

double baseline_sd(const Epoch& epoch) {
    const std::size_t npre = epoch.pre_samples();
    if (npre == 0 || epoch.samples.size() < npre) return 0.0;
    double mean = 0.0;
    for (std::size_t i = 0; i < npre; ++i) mean += epoch.samples[i];
    mean /= static_cast<double>(npre);
    double ss = 0.0;
    for (std::size_t i = 0; i < npre; ++i) {
        const double d = epoch.samples[i] - mean;
        ss += d * d;
    }
    return std::sqrt(ss / static_cast<double>(npre));
}

P300Detection detect_p300(const Epoch& epoch, double window_start_ms, double window_end_ms,
                          double threshold_uv) {
    if (!(window_start_ms < window_end_ms)) {
        throw ConfigError("detection window start must precede its end");
    }
    P300Detection d;
    d.marker_code = epoch.marker_code;
    d.marker_t_us = epoch.marker_t_us;
    d.threshold_uv = threshold_uv;

    const std::size_t npre = epoch.pre_samples();
    const double period_ms = 1000.0 / epoch.sample_rate_hz;
    const auto first =
        npre + static_cast<std::size_t>(std::ceil(window_start_ms / period_ms - 1e-9));
    const auto last =
        npre + static_cast<std::size_t>(std::floor(window_end_ms / period_ms + 1e-9));
    if (first >= epoch.samples.size() || last >= epoch.samples.size() || first > last) {
        throw DataError("epoch does not cover the detection window");
    }

    std::size_t best = first;
    for (std::size_t k = first + 1; k <= last; ++k) {
        if (epoch.samples[k] > epoch.samples[best]) best = k;
    }
    d.peak_amplitude_uv = epoch.samples[best];
    d.peak_latency_ms = epoch.time_ms_at(best);
    d.valid = d.peak_amplitude_uv >= threshold_uv && d.peak_amplitude_uv > 0.0;
    return d;
}

std::optional<char> select_p300_winner(const std::vector<P300Detection>& detections) {
    for (std::size_t i = 0; i < detections.size(); ++i) {
        for (std::size_t j = i + 1; j < detections.size(); ++j) {
            if (detections[i].marker_code == detections[j].marker_code) {
                throw DataError(std::string("duplicate marker '") + detections[i].marker_code +
                                "' in one stimulation epoch");
            }
        }
    }
    const P300Detection* best = nullptr;
    for (const auto& d : detections) {
        if (!d.valid) continue;
        if (best == nullptr || d.peak_amplitude_uv > best->peak_amplitude_uv ||
            (d.peak_amplitude_uv == best->peak_amplitude_uv &&
             d.marker_t_us < best->marker_t_us)) {
            best = &d;
        }
    }
    if (best == nullptr) return std::nullopt;
    return best->marker_code;
}

}  // namespace bci
