#include "bci/spectral.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "bci/fft.hpp"

namespace bci {

std::vector<double> hamming_window(std::size_t n) {
    std::vector<double> w(n, 1.0);
    if (n < 2) return w;
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                      static_cast<double>(n));
    }
    return w;
}

PsdEstimate welch_psd(const std::vector<double>& signal, double sample_rate_hz,
                      std::size_t segment_length, double overlap_fraction,
                      const Kernels& kernels) {
    if (!(sample_rate_hz > 0.0)) throw ConfigError("sample rate must be positive");
    if (segment_length < 2) throw ConfigError("segment length must be >= 2");
    if (!(overlap_fraction >= 0.0) || !(overlap_fraction < 1.0)) {
        throw ConfigError("overlap fraction must lie in [0, 1)");
    }
    if (signal.size() < segment_length) {
        throw DataError("signal shorter than one PSD segment (" +
                        std::to_string(signal.size()) + " < " +
                        std::to_string(segment_length) + " samples)");
    }

    const std::size_t n = segment_length;
    std::size_t hop = static_cast<std::size_t>(
        std::llround(static_cast<double>(n) * (1.0 - overlap_fraction)));
    if (hop == 0) hop = 1;

    const std::vector<double> window = hamming_window(n);
    double window_power = 0.0;
    for (double w : window) window_power += w * w;

    const std::size_t nbins = n / 2 + 1;
    std::vector<double> acc(nbins, 0.0);
    std::vector<double> seg(n), re, im;

    std::size_t nseg = 0;
    for (std::size_t start = 0; start + n <= signal.size(); start += hop) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean += signal[start + i];
        mean /= static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) seg[i] = signal[start + i] - mean;

        kernels.multiply(seg.data(), window.data(), seg.data(), n);
        fft_real(seg, re, im, kernels);
        kernels.accumulate_power(re.data(), im.data(), acc.data(), nbins);
        ++nseg;
    }

    PsdEstimate psd;
    psd.segment_length = n;
    psd.overlap_fraction = overlap_fraction;
    psd.sample_rate_hz = sample_rate_hz;
    psd.power.resize(nbins);
    psd.bin_frequencies_hz.resize(nbins);

    const double df = sample_rate_hz / static_cast<double>(n);
    const double scale =
        2.0 / (sample_rate_hz * window_power * static_cast<double>(nseg));
    kernels.scale(acc.data(), scale, psd.power.data(), nbins);
    psd.power[0] *= 0.5;
    if (n % 2 == 0) psd.power[nbins - 1] *= 0.5;
    for (std::size_t k = 0; k < nbins; ++k) {
        psd.bin_frequencies_hz[k] = df * static_cast<double>(k);
    }
    return psd;
}

SsvepFeature extract_ssvep_features(const PsdEstimate& psd, const StimulusConfig& config,
                                    double half_width_hz) {
    if (!(half_width_hz > 0.0)) throw ConfigError("band half-width must be positive");
    if (psd.bin_frequencies_hz.empty()) throw DataError("empty PSD");

    const double fmax = psd.bin_frequencies_hz.back();
    const double df = psd.sample_rate_hz / static_cast<double>(psd.segment_length);
    const double tol = df * 1e-9;

    SsvepFeature out;
    out.bands.reserve(config.leds.size());
    for (const auto& led : config.leds) {
        const double lo = led.frequency_hz - half_width_hz;
        const double hi = led.frequency_hz + half_width_hz;
        if (lo < -tol || hi > fmax + tol) {
            throw ConfigError("PSD range does not cover the band around " +
                              std::to_string(led.frequency_hz) + " Hz");
        }
        double peak = 0.0;
        std::size_t hits = 0;
        for (std::size_t k = 0; k < psd.bin_frequencies_hz.size(); ++k) {
            const double f = psd.bin_frequencies_hz[k];
            if (f >= lo - tol && f <= hi + tol) {
                if (hits == 0 || psd.power[k] > peak) peak = psd.power[k];
                ++hits;
            }
        }
        if (hits < 2) {
            throw ConfigError("PSD resolution too coarse: fewer than 2 bins within ±" +
                              std::to_string(half_width_hz) + " Hz of " +
                              std::to_string(led.frequency_hz) + " Hz");
        }
        out.bands.push_back({led.frequency_hz, peak});
    }
    return out;
}

SsvepWinner ssvep_argmax(const SsvepFeature& features) {
    if (features.bands.empty()) throw ConfigError("no SSVEP bands to rank");

    const SsvepBandPower* best = &features.bands[0];
    for (const auto& b : features.bands) {
        if (b.band_peak_power > best->band_peak_power ||
            (b.band_peak_power == best->band_peak_power &&
             b.frequency_hz < best->frequency_hz)) {
            best = &b;
        }
    }
    double runner_up = -1.0;
    for (const auto& b : features.bands) {
        if (&b == best) continue;
        if (b.band_peak_power > runner_up) runner_up = b.band_peak_power;
    }

    SsvepWinner w;
    w.frequency_hz = best->frequency_hz;
    if (runner_up > 0.0) {
        w.margin = best->band_peak_power / runner_up;
    } else if (best->band_peak_power > 0.0) {
        w.margin = std::numeric_limits<double>::infinity();
    } else {
        w.margin = 1.0;
    }
    return w;
}

}  // namespace bci
