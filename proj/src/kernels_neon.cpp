#if defined(__aarch64__)

#include <arm_neon.h>

#include "bci/kernels.hpp"

namespace bci {
namespace {

void multiply_neon(const double* a, const double* b, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        vst1q_f64(out + i, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    }
    for (; i < n; ++i) out[i] = a[i] * b[i];
}

void scale_neon(const double* a, double s, double* out, std::size_t n) {
    const float64x2_t vs = vdupq_n_f64(s);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        vst1q_f64(out + i, vmulq_f64(vld1q_f64(a + i), vs));
    }
    for (; i < n; ++i) out[i] = a[i] * s;
}

void accumulate_power_neon(const double* re, const double* im, double* acc, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t vre = vld1q_f64(re + i);
        const float64x2_t vim = vld1q_f64(im + i);
        const float64x2_t p = vaddq_f64(vmulq_f64(vre, vre), vmulq_f64(vim, vim));
        vst1q_f64(acc + i, vaddq_f64(vld1q_f64(acc + i), p));
    }
    for (; i < n; ++i) acc[i] += re[i] * re[i] + im[i] * im[i];
}

void complex_multiply_neon(const double* are, const double* aim,
                           const double* bre, const double* bim,
                           double* outre, double* outim, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t var = vld1q_f64(are + i);
        const float64x2_t vai = vld1q_f64(aim + i);
        const float64x2_t vbr = vld1q_f64(bre + i);
        const float64x2_t vbi = vld1q_f64(bim + i);
        const float64x2_t rr = vsubq_f64(vmulq_f64(var, vbr), vmulq_f64(vai, vbi));
        const float64x2_t ii = vaddq_f64(vmulq_f64(var, vbi), vmulq_f64(vai, vbr));
        vst1q_f64(outre + i, rr);
        vst1q_f64(outim + i, ii);
    }
    for (; i < n; ++i) {
        const double rr = are[i] * bre[i] - aim[i] * bim[i];
        const double ii = are[i] * bim[i] + aim[i] * bre[i];
        outre[i] = rr;
        outim[i] = ii;
    }
}

void biquad_step_neon(const BiquadCoeffs& c, const double* x,
                      double* s1, double* s2, double* y, std::size_t lanes) {
    const float64x2_t b0 = vdupq_n_f64(c.b0);
    const float64x2_t b1 = vdupq_n_f64(c.b1);
    const float64x2_t b2 = vdupq_n_f64(c.b2);
    const float64x2_t a1 = vdupq_n_f64(c.a1);
    const float64x2_t a2 = vdupq_n_f64(c.a2);
    std::size_t i = 0;
    for (; i + 2 <= lanes; i += 2) {
        const float64x2_t vx = vld1q_f64(x + i);
        const float64x2_t vs1 = vld1q_f64(s1 + i);
        const float64x2_t vs2 = vld1q_f64(s2 + i);
        const float64x2_t vy = vaddq_f64(vmulq_f64(b0, vx), vs1);
        const float64x2_t ns1 =
            vaddq_f64(vsubq_f64(vmulq_f64(b1, vx), vmulq_f64(a1, vy)), vs2);
        const float64x2_t ns2 = vsubq_f64(vmulq_f64(b2, vx), vmulq_f64(a2, vy));
        vst1q_f64(s1 + i, ns1);
        vst1q_f64(s2 + i, ns2);
        vst1q_f64(y + i, vy);
    }
    for (; i < lanes; ++i) {
        const double yi = c.b0 * x[i] + s1[i];
        s1[i] = c.b1 * x[i] - c.a1 * yi + s2[i];
        s2[i] = c.b2 * x[i] - c.a2 * yi;
        y[i] = yi;
    }
}

}  // namespace

const Kernels& neon_kernels_impl() {
    static const Kernels k{
        "neon",
        multiply_neon,
        scale_neon,
        accumulate_power_neon,
        complex_multiply_neon,
        biquad_step_neon,
    };
    return k;
}

}  // namespace bci

#endif
