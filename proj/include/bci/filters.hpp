#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "bci/kernels.hpp"

namespace bci {

// Cascade of second-order sections at a fixed sample rate.
struct FilterDesign {
    std::vector<BiquadCoeffs> sections;
    double sample_rate_hz{0.0};
    std::string description;
};

// Butterworth designs via the prewarped bilinear transform, so the magnitude
// at each cutoff lands exactly on -3.0103 dB. The bandpass order counts the
// low-pass prototype (order 4 -> 8 digital poles -> 4 sections) and must be
// even; the low-pass accepts any order >= 1.
FilterDesign design_lowpass(double cutoff_hz, int order, double sample_rate_hz);
FilterDesign design_bandpass(double low_hz, double high_hz, int order, double sample_rate_hz);

// Constrained one-section notch (unit gain at DC and Nyquist, zero at center).
FilterDesign design_notch(double center_hz, double q, double sample_rate_hz);

// Complex response of the cascade at a single frequency.
std::complex<double> frequency_response(const FilterDesign& design, double f_hz);

double magnitude_db(const FilterDesign& design, double f_hz);

// True when every section's poles lie strictly inside the unit circle.
bool is_stable(const FilterDesign& design);

// Streaming state for running one design over `lanes` parallel signals.
class FilterState {
public:
    FilterState(FilterDesign design, std::size_t lanes,
                const Kernels& kernels = active_kernels());

    // Consumes one frame of `lanes` input samples, produces one output frame.
    // In-place operation (x == y) is allowed.
    void process(const double* x, double* y);

    void reset();

    std::size_t lanes() const { return lanes_; }
    const FilterDesign& design() const { return design_; }

private:
    FilterDesign design_;
    std::size_t lanes_;
    const Kernels* kernels_;
    std::vector<double> s1_;
    std::vector<double> s2_;
    std::vector<double> work_;
};

// Offline convenience: zero-state filtering of a single signal.
std::vector<double> filter_signal(const FilterDesign& design, const std::vector<double>& x,
                                  const Kernels& kernels = active_kernels());

}  // namespace bci
