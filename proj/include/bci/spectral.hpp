#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

#include "bci/kernels.hpp"
#include "bci/types.hpp"

namespace bci {

// One-sided power spectral density estimate.
struct PsdEstimate {
    std::vector<double> bin_frequencies_hz;
    std::vector<double> power;  // µV²/Hz
    std::size_t segment_length{0};
    double overlap_fraction{0.0};
    const char* window_name{"hamming"};
    double sample_rate_hz{0.0};
};

struct SsvepBandPower {
    double frequency_hz{0.0};
    double band_peak_power{0.0};  // µV²/Hz
};

// Per-target band peaks over one analysis window.
struct SsvepFeature {
    std::vector<SsvepBandPower> bands;  // one per configured LED, config order
    std::int64_t window_start_us{0};
    std::int64_t window_end_us{0};
};

struct SsvepWinner {
    double frequency_hz{0.0};
    // Winner band peak divided by the runner-up band peak. 1.0 when all bands
    // are zero, +inf when only the winner is nonzero.
    double margin{1.0};
};

// Periodic (DFT-even) Hamming window.
std::vector<double> hamming_window(std::size_t n);

// Welch averaged periodogram: mean-detrended, Hamming-windowed segments with
// the given overlap; one-sided density scaling by the window power so that
// sum(power)*binSpacing tracks the signal variance.
PsdEstimate welch_psd(const std::vector<double>& signal, double sample_rate_hz,
                      std::size_t segment_length = 500, double overlap_fraction = 0.5,
                      const Kernels& kernels = active_kernels());

// Maximum PSD value within frequency ± halfWidth (inclusive) per configured LED.
SsvepFeature extract_ssvep_features(const PsdEstimate& psd, const StimulusConfig& config,
                                    double half_width_hz = 0.5);

// Largest band peak wins; exact ties go to the lowest frequency.
SsvepWinner ssvep_argmax(const SsvepFeature& features);

}  // namespace bci
