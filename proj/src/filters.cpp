#include "bci/filters.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bci/types.hpp"

namespace bci {
namespace {

constexpr double kPi = std::numbers::pi;

// s-domain quadratic (B0 + B1*s + B2*s^2) / (A0 + A1*s + A2*s^2).
struct AnalogBiquad {
    double B0{0.0}, B1{0.0}, B2{0.0};
    double A0{0.0}, A1{0.0}, A2{0.0};
};

// Bilinear transform s = K*(1 - z^-1)/(1 + z^-1), K = 2*fs.
BiquadCoeffs bilinear(const AnalogBiquad& h, double k) {
    const double k2 = k * k;
    const double a0 = h.A0 + h.A1 * k + h.A2 * k2;
    if (a0 == 0.0) throw ConfigError("degenerate analog section");
    BiquadCoeffs c;
    c.b0 = (h.B0 + h.B1 * k + h.B2 * k2) / a0;
    c.b1 = (2.0 * h.B0 - 2.0 * h.B2 * k2) / a0;
    c.b2 = (h.B0 - h.B1 * k + h.B2 * k2) / a0;
    c.a1 = (2.0 * h.A0 - 2.0 * h.A2 * k2) / a0;
    c.a2 = (h.A0 - h.A1 * k + h.A2 * k2) / a0;
    return c;
}

// First-order analog section transformed without the padded quadratic, which
// would park a cancelled pole on the unit circle.
BiquadCoeffs bilinear_first_order(double B0, double B1, double A0, double A1, double k) {
    const double a0 = A0 + A1 * k;
    if (a0 == 0.0) throw ConfigError("degenerate analog section");
    BiquadCoeffs c;
    c.b0 = (B0 + B1 * k) / a0;
    c.b1 = (B0 - B1 * k) / a0;
    c.b2 = 0.0;
    c.a1 = (A0 - A1 * k) / a0;
    c.a2 = 0.0;
    return c;
}

double prewarp(double f_hz, double fs) {
    return 2.0 * fs * std::tan(kPi * f_hz / fs);
}

void check_band(double f_hz, double fs, const char* what) {
    if (!(f_hz > 0.0) || !(f_hz < fs / 2.0)) {
        throw ConfigError(std::string(what) + " frequency must lie in (0, Nyquist)");
    }
}

// Normalized Butterworth prototype poles on the left unit semicircle.
std::vector<std::complex<double>> butterworth_poles(int order) {
    if (order < 1) throw ConfigError("filter order must be >= 1");
    std::vector<std::complex<double>> poles;
    poles.reserve(static_cast<std::size_t>(order));
    for (int k = 0; k < order; ++k) {
        const double theta = kPi * (2.0 * k + order + 1.0) / (2.0 * order);
        poles.emplace_back(std::cos(theta), std::sin(theta));
    }
    return poles;
}

}  // namespace

FilterDesign design_lowpass(double cutoff_hz, int order, double sample_rate_hz) {
    if (!(sample_rate_hz > 0.0)) throw ConfigError("sample rate must be positive");
    check_band(cutoff_hz, sample_rate_hz, "cutoff");
    const double wc = prewarp(cutoff_hz, sample_rate_hz);
    const double k = 2.0 * sample_rate_hz;

    FilterDesign d;
    d.sample_rate_hz = sample_rate_hz;
    d.description = "butterworth lowpass " + std::to_string(cutoff_hz) + " Hz order " +
                    std::to_string(order);
    const auto poles = butterworth_poles(order);
    // Conjugate pairs (p, conj p) give real quadratics; an odd order leaves
    // one real pole at -1.
    for (int i = 0; i < order / 2; ++i) {
        const auto p = poles[static_cast<std::size_t>(i)] * wc;
        AnalogBiquad h;
        h.B0 = wc * wc;
        h.A0 = std::norm(p);
        h.A1 = -2.0 * p.real();
        h.A2 = 1.0;
        d.sections.push_back(bilinear(h, k));
    }
    if (order % 2 != 0) {
        d.sections.push_back(bilinear_first_order(wc, 0.0, wc, 1.0, k));
    }
    return d;
}

FilterDesign design_bandpass(double low_hz, double high_hz, int order, double sample_rate_hz) {
    if (!(sample_rate_hz > 0.0)) throw ConfigError("sample rate must be positive");
    check_band(low_hz, sample_rate_hz, "low edge");
    check_band(high_hz, sample_rate_hz, "high edge");
    if (!(low_hz < high_hz)) throw ConfigError("band edges must satisfy low < high");
    if (order % 2 != 0) throw ConfigError("bandpass prototype order must be even");
    const double w1 = prewarp(low_hz, sample_rate_hz);
    const double w2 = prewarp(high_hz, sample_rate_hz);
    const double bw = w2 - w1;
    const double w0sq = w1 * w2;
    const double k = 2.0 * sample_rate_hz;

    // Each prototype pole p maps to the roots of s^2 - p*bw*s + w0^2 = 0; the
    // conjugate prototype pole supplies the conjugate roots, so pairing each
    // root with its conjugate yields real quadratics. Splitting the numerator
    // bw^n * s^n as one bw*s per section keeps the cascade product exact.
    FilterDesign d;
    d.sample_rate_hz = sample_rate_hz;
    d.description = "butterworth bandpass " + std::to_string(low_hz) + "-" +
                    std::to_string(high_hz) + " Hz prototype order " + std::to_string(order);
    const auto poles = butterworth_poles(order);
    auto add_section = [&](const std::complex<double>& root) {
        AnalogBiquad h;
        h.B1 = bw;
        h.A0 = std::norm(root);
        h.A1 = -2.0 * root.real();
        h.A2 = 1.0;
        d.sections.push_back(bilinear(h, k));
    };
    for (int i = 0; i < order / 2; ++i) {
        const auto p = poles[static_cast<std::size_t>(i)];
        const auto disc = std::sqrt(p * p * (bw * bw) - 4.0 * w0sq);
        add_section((p * bw + disc) * 0.5);
        add_section((p * bw - disc) * 0.5);
    }
    return d;
}

FilterDesign design_notch(double center_hz, double q, double sample_rate_hz) {
    if (!(sample_rate_hz > 0.0)) throw ConfigError("sample rate must be positive");
    check_band(center_hz, sample_rate_hz, "center");
    if (!(q > 0.0)) throw ConfigError("notch Q must be positive");
    const double w0 = 2.0 * kPi * center_hz / sample_rate_hz;
    const double alpha = std::sin(w0) / (2.0 * q);
    const double cw = std::cos(w0);
    const double a0 = 1.0 + alpha;

    BiquadCoeffs c;
    c.b0 = 1.0 / a0;
    c.b1 = -2.0 * cw / a0;
    c.b2 = 1.0 / a0;
    c.a1 = -2.0 * cw / a0;
    c.a2 = (1.0 - alpha) / a0;

    FilterDesign d;
    d.sample_rate_hz = sample_rate_hz;
    d.description = "notch " + std::to_string(center_hz) + " Hz Q " + std::to_string(q);
    d.sections.push_back(c);
    return d;
}

std::complex<double> frequency_response(const FilterDesign& design, double f_hz) {
    const double w = 2.0 * kPi * f_hz / design.sample_rate_hz;
    const std::complex<double> z1 = std::polar(1.0, -w);
    const std::complex<double> z2 = z1 * z1;
    std::complex<double> h{1.0, 0.0};
    for (const auto& c : design.sections) {
        h *= (c.b0 + c.b1 * z1 + c.b2 * z2) / (1.0 + c.a1 * z1 + c.a2 * z2);
    }
    return h;
}

double magnitude_db(const FilterDesign& design, double f_hz) {
    return 20.0 * std::log10(std::abs(frequency_response(design, f_hz)));
}

bool is_stable(const FilterDesign& design) {
    for (const auto& c : design.sections) {
        if (!(std::abs(c.a2) < 1.0)) return false;
        if (!(std::abs(c.a1) < 1.0 + c.a2)) return false;
    }
    return true;
}

FilterState::FilterState(FilterDesign design, std::size_t lanes, const Kernels& kernels)
    : design_(std::move(design)),
      lanes_(lanes),
      kernels_(&kernels),
      s1_(design_.sections.size() * lanes, 0.0),
      s2_(design_.sections.size() * lanes, 0.0),
      work_(lanes, 0.0) {
    if (lanes == 0) throw ConfigError("filter lane count must be positive");
}

void FilterState::process(const double* x, double* y) {
    if (design_.sections.empty()) {
        for (std::size_t i = 0; i < lanes_; ++i) y[i] = x[i];
        return;
    }
    const double* in = x;
    for (std::size_t s = 0; s < design_.sections.size(); ++s) {
        kernels_->biquad_step(design_.sections[s], in, s1_.data() + s * lanes_,
                              s2_.data() + s * lanes_, work_.data(), lanes_);
        in = work_.data();
    }
    for (std::size_t i = 0; i < lanes_; ++i) y[i] = work_[i];
}

void FilterState::reset() {
    std::fill(s1_.begin(), s1_.end(), 0.0);
    std::fill(s2_.begin(), s2_.end(), 0.0);
}

std::vector<double> filter_signal(const FilterDesign& design, const std::vector<double>& x,
                                  const Kernels& kernels) {
    FilterState state(design, 1, kernels);
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) state.process(&x[i], &y[i]);
    return y;
}

}  // namespace bci
