#pragma once

#include <cstddef>
#include <vector>

namespace bci {

// One second-order IIR section, a0 normalized to 1.
struct BiquadCoeffs {
    double b0{1.0};
    double b1{0.0};
    double b2{0.0};
    double a1{0.0};
    double a2{0.0};
};

// Function table for the data-parallel inner loops. The scalar variant is the
// reference implementation; vector variants evaluate the same expression tree
// per element and the translation unit is built without FP contraction, so
// every variant produces bit-identical results.
struct Kernels {
    const char* name;

    // out[i] = a[i] * b[i]
    void (*multiply)(const double* a, const double* b, double* out, std::size_t n);
    // out[i] = a[i] * s
    void (*scale)(const double* a, double s, double* out, std::size_t n);
    // acc[i] += re[i]^2 + im[i]^2
    void (*accumulate_power)(const double* re, const double* im, double* acc, std::size_t n);
    // (outre + i*outim)[k] = (are + i*aim)[k] * (bre + i*bim)[k]
    void (*complex_multiply)(const double* are, const double* aim,
                             const double* bre, const double* bim,
                             double* outre, double* outim, std::size_t n);
    // One transposed direct form II step across `lanes` independent signals
    // sharing one coefficient set. State arrays are per lane.
    void (*biquad_step)(const BiquadCoeffs& c, const double* x,
                        double* s1, double* s2, double* y, std::size_t lanes);
};

const Kernels& scalar_kernels();

// Best variant the running CPU supports.
const Kernels& active_kernels();

// Every variant usable on the running CPU, scalar first.
std::vector<const Kernels*> available_kernels();

}  // namespace bci
