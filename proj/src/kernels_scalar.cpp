#include "bci/kernels.hpp"

namespace bci {
namespace {

void multiply_scalar(const double* a, const double* b, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void scale_scalar(const double* a, double s, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * s;
}

void accumulate_power_scalar(const double* re, const double* im, double* acc, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) acc[i] += re[i] * re[i] + im[i] * im[i];
}

void complex_multiply_scalar(const double* are, const double* aim,
                             const double* bre, const double* bim,
                             double* outre, double* outim, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double rr = are[i] * bre[i] - aim[i] * bim[i];
        const double ii = are[i] * bim[i] + aim[i] * bre[i];
        outre[i] = rr;
        outim[i] = ii;
    }
}

void biquad_step_scalar(const BiquadCoeffs& c, const double* x,
                        double* s1, double* s2, double* y, std::size_t lanes) {
    for (std::size_t i = 0; i < lanes; ++i) {
        const double yi = c.b0 * x[i] + s1[i];
        s1[i] = c.b1 * x[i] - c.a1 * yi + s2[i];
        s2[i] = c.b2 * x[i] - c.a2 * yi;
        y[i] = yi;
    }
}

}  // namespace

const Kernels& scalar_kernels() {
    static const Kernels k{
        "scalar",
        multiply_scalar,
        scale_scalar,
        accumulate_power_scalar,
        complex_multiply_scalar,
        biquad_step_scalar,
    };
    return k;
}

}  // namespace bci
