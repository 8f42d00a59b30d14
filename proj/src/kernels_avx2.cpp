#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "bci/kernels.hpp"

namespace bci {
namespace {

// Tails shorter than one vector fall back to the scalar expressions, which
// are elementwise identical to the vector lanes.

void multiply_avx2(const double* a, const double* b, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d va = _mm256_loadu_pd(a + i);
        const __m256d vb = _mm256_loadu_pd(b + i);
        _mm256_storeu_pd(out + i, _mm256_mul_pd(va, vb));
    }
    for (; i < n; ++i) out[i] = a[i] * b[i];
}

void scale_avx2(const double* a, double s, double* out, std::size_t n) {
    const __m256d vs = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), vs));
    }
    for (; i < n; ++i) out[i] = a[i] * s;
}

void accumulate_power_avx2(const double* re, const double* im, double* acc, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vre = _mm256_loadu_pd(re + i);
        const __m256d vim = _mm256_loadu_pd(im + i);
        const __m256d p = _mm256_add_pd(_mm256_mul_pd(vre, vre), _mm256_mul_pd(vim, vim));
        _mm256_storeu_pd(acc + i, _mm256_add_pd(_mm256_loadu_pd(acc + i), p));
    }
    for (; i < n; ++i) acc[i] += re[i] * re[i] + im[i] * im[i];
}

void complex_multiply_avx2(const double* are, const double* aim,
                           const double* bre, const double* bim,
                           double* outre, double* outim, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d var = _mm256_loadu_pd(are + i);
        const __m256d vai = _mm256_loadu_pd(aim + i);
        const __m256d vbr = _mm256_loadu_pd(bre + i);
        const __m256d vbi = _mm256_loadu_pd(bim + i);
        const __m256d rr = _mm256_sub_pd(_mm256_mul_pd(var, vbr), _mm256_mul_pd(vai, vbi));
        const __m256d ii = _mm256_add_pd(_mm256_mul_pd(var, vbi), _mm256_mul_pd(vai, vbr));
        _mm256_storeu_pd(outre + i, rr);
        _mm256_storeu_pd(outim + i, ii);
    }
    for (; i < n; ++i) {
        const double rr = are[i] * bre[i] - aim[i] * bim[i];
        const double ii = are[i] * bim[i] + aim[i] * bre[i];
        outre[i] = rr;
        outim[i] = ii;
    }
}

void biquad_step_avx2(const BiquadCoeffs& c, const double* x,
                      double* s1, double* s2, double* y, std::size_t lanes) {
    const __m256d b0 = _mm256_set1_pd(c.b0);
    const __m256d b1 = _mm256_set1_pd(c.b1);
    const __m256d b2 = _mm256_set1_pd(c.b2);
    const __m256d a1 = _mm256_set1_pd(c.a1);
    const __m256d a2 = _mm256_set1_pd(c.a2);
    std::size_t i = 0;
    for (; i + 4 <= lanes; i += 4) {
        const __m256d vx = _mm256_loadu_pd(x + i);
        const __m256d vs1 = _mm256_loadu_pd(s1 + i);
        const __m256d vs2 = _mm256_loadu_pd(s2 + i);
        const __m256d vy = _mm256_add_pd(_mm256_mul_pd(b0, vx), vs1);
        const __m256d ns1 =
            _mm256_add_pd(_mm256_sub_pd(_mm256_mul_pd(b1, vx), _mm256_mul_pd(a1, vy)), vs2);
        const __m256d ns2 = _mm256_sub_pd(_mm256_mul_pd(b2, vx), _mm256_mul_pd(a2, vy));
        _mm256_storeu_pd(s1 + i, ns1);
        _mm256_storeu_pd(s2 + i, ns2);
        _mm256_storeu_pd(y + i, vy);
    }
    for (; i < lanes; ++i) {
        const double yi = c.b0 * x[i] + s1[i];
        s1[i] = c.b1 * x[i] - c.a1 * yi + s2[i];
        s2[i] = c.b2 * x[i] - c.a2 * yi;
        y[i] = yi;
    }
}

}  // namespace

const Kernels& avx2_kernels_impl() {
    static const Kernels k{
        "avx2",
        multiply_avx2,
        scale_avx2,
        accumulate_power_avx2,
        complex_multiply_avx2,
        biquad_step_avx2,
    };
    return k;
}

}  // namespace bci

#endif
