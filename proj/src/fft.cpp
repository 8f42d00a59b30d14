#include "bci/fft.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace bci {
namespace {

constexpr double kPi = std::numbers::pi;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
    std::size_t m = 1;
    while (m < n) m <<= 1;
    return m;
}

void radix2(double* re, double* im, std::size_t n, double sign) {
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) {
            std::swap(re[i], re[j]);
            std::swap(im[i], im[j]);
        }
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * kPi / static_cast<double>(len);
        const double wr = std::cos(ang);
        const double wi = std::sin(ang);
        for (std::size_t start = 0; start < n; start += len) {
            double cr = 1.0;
            double ci = 0.0;
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::size_t a = start + k;
                const std::size_t b = a + len / 2;
                const double tr = re[b] * cr - im[b] * ci;
                const double ti = re[b] * ci + im[b] * cr;
                re[b] = re[a] - tr;
                im[b] = im[a] - ti;
                re[a] += tr;
                im[a] += ti;
                const double ncr = cr * wr - ci * wi;
                ci = cr * wi + ci * wr;
                cr = ncr;
            }
        }
    }
}

// Chirp angle pi * k^2 / n with k^2 reduced mod 2n to keep the argument small.
double chirp_angle(std::size_t k, std::size_t n) {
    const std::uint64_t m = (static_cast<std::uint64_t>(k) * k) % (2 * static_cast<std::uint64_t>(n));
    return kPi * static_cast<double>(m) / static_cast<double>(n);
}

void bluestein(std::vector<double>& re, std::vector<double>& im, const Kernels& kernels) {
    const std::size_t n = re.size();
    const std::size_t m = next_pow2(2 * n - 1);

    std::vector<double> are(m, 0.0), aim(m, 0.0);
    std::vector<double> bre(m, 0.0), bim(m, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const double ang = chirp_angle(k, n);
        const double cr = std::cos(ang);
        const double ci = std::sin(ang);
        are[k] = re[k] * cr + im[k] * ci;
        aim[k] = -re[k] * ci + im[k] * cr;
        bre[k] = cr;
        bim[k] = ci;
        if (k != 0) {
            bre[m - k] = cr;
            bim[m - k] = ci;
        }
    }

    radix2(are.data(), aim.data(), m, -1.0);
    radix2(bre.data(), bim.data(), m, -1.0);
    kernels.complex_multiply(are.data(), aim.data(), bre.data(), bim.data(),
                             are.data(), aim.data(), m);
    radix2(are.data(), aim.data(), m, 1.0);
    const double inv_m = 1.0 / static_cast<double>(m);

    for (std::size_t k = 0; k < n; ++k) {
        const double ang = chirp_angle(k, n);
        const double cr = std::cos(ang);
        const double ci = std::sin(ang);
        const double vr = are[k] * inv_m;
        const double vi = aim[k] * inv_m;
        re[k] = vr * cr + vi * ci;
        im[k] = -vr * ci + vi * cr;
    }
}

}  // namespace

void fft(std::vector<double>& re, std::vector<double>& im, bool inverse, const Kernels& kernels) {
    if (re.size() != im.size()) throw std::invalid_argument("fft: re/im size mismatch");
    const std::size_t n = re.size();
    if (n <= 1) return;

    if (inverse) {
        for (std::size_t i = 0; i < n; ++i) im[i] = -im[i];
    }
    if (is_pow2(n)) {
        radix2(re.data(), im.data(), n, -1.0);
    } else {
        bluestein(re, im, kernels);
    }
    if (inverse) {
        const double inv_n = 1.0 / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) {
            re[i] *= inv_n;
            im[i] *= -inv_n;
        }
    }
}

void fft_real(const std::vector<double>& x, std::vector<double>& re, std::vector<double>& im,
              const Kernels& kernels) {
    re = x;
    im.assign(x.size(), 0.0);
    fft(re, im, false, kernels);
}

}  // namespace bci
