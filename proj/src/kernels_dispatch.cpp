#include "bci/kernels.hpp"

namespace bci {

#if defined(__x86_64__) || defined(_M_X64)
const Kernels& avx2_kernels_impl();

namespace {
bool cpu_has_avx2() {
#if defined(__GNUC__) || defined(__clang__)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}
}  // namespace
#endif

#if defined(__aarch64__)
const Kernels& neon_kernels_impl();
#endif

const Kernels& active_kernels() {
#if defined(__x86_64__) || defined(_M_X64)
    if (cpu_has_avx2()) return avx2_kernels_impl();
#elif defined(__aarch64__)
    return neon_kernels_impl();
#endif
    return scalar_kernels();
}

std::vector<const Kernels*> available_kernels() {
    std::vector<const Kernels*> out{&scalar_kernels()};
#if defined(__x86_64__) || defined(_M_X64)
    if (cpu_has_avx2()) out.push_back(&avx2_kernels_impl());
#elif defined(__aarch64__)
    out.push_back(&neon_kernels_impl());
#endif
    return out;
}

}  // namespace bci
