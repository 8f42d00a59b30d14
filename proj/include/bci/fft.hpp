#pragma once

#include <cstddef>
#include <vector>

#include "bci/kernels.hpp"

namespace bci {

// In-place complex DFT on split real/imaginary arrays. Power-of-two sizes run
// the iterative radix-2 path; any other size goes through Bluestein's chirp-z
// reduction to a power-of-two convolution. The inverse includes the 1/n scale.
void fft(std::vector<double>& re, std::vector<double>& im, bool inverse = false,
         const Kernels& kernels = active_kernels());

// Forward transform of a real signal.
void fft_real(const std::vector<double>& x, std::vector<double>& re, std::vector<double>& im,
              const Kernels& kernels = active_kernels());

}  // namespace bci
